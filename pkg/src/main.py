import argparse
import logging
import os
import sys
from dataclasses import dataclass
from logging.handlers import RotatingFileHandler
from typing import Any, List, Optional, Sequence

from dotenv import load_dotenv

# 在所有其他导入之前，尽早加载环境变量
# 这样可以确保 src.config 在加载时就能读到 .env 文件中定义的默认值
load_dotenv()

current_script_path = os.path.abspath(__file__)
current_dir = os.path.dirname(current_script_path)
parent_dir = os.path.dirname(current_dir)
if parent_dir not in sys.path:
    sys.path.insert(0, parent_dir)

# 从我们自己的模块中导入
from src import config
from src.curve.models.curve import CurveError
from src.curve.models.series import SeriesError
from src.curve.services.classification_service import classification_service
from src.curve.services.curve_service import curve_service
from src.curve.services.gonality_service import gonality_service
from src.curve.services.local_algebra_service import local_algebra_service
from src.curve.services.pencil_service import pencil_service
from src.curve.services.scroll_service import scroll_service
from src.semigroup.models.numerical_semigroup import SemigroupError, WeightReport
from src.semigroup.services.numset_service import numset_service
from src.semigroup.services.tableau_service import tableau_service
from src.semigroup.services.tree_service import tree_service
from src.utils import report_writer
from src.utils.curve_loader import CurveFileError, curve_summary, load_curve_file, parse_pair
from src.verify.models.scan_report import ScanReport
from src.verify.services.scan_service import scan_service

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

VERIFY_STATEMENTS = (
    "lemma-k", "max-weight", "submaximal", "conjecture", "torres",
    "kappa-bounds", "leaf-law", "genus3-family",
)


def setup_logging():
    """
    配置日志记录器，实现双通道输出：
    - 控制台 (stderr): 默认只显示 INFO 及以上级别的进度日志。
    - 日志文件 (semicurve_debug.log): 记录 DEBUG 及以上级别的所有日志，用于问题排查。

    报告本身写到 stdout，日志一律走 stderr，不会混入 JSON 或 CSV。
    """
    # 1. 创建一个统一的格式化器
    log_formatter = logging.Formatter(config.LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

    # 2. 配置根 logger，文件需要 DEBUG，控制台级别在各自的 handler 中控制
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    root_logger.handlers.clear()

    # 3. 进度处理器 (stderr)，级别取自配置，WARNING 及以上交给下一个处理器
    console_log_level = getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
    progress_handler = logging.StreamHandler(sys.stderr)
    progress_handler.setFormatter(log_formatter)
    progress_handler.setLevel(console_log_level)
    progress_handler.addFilter(lambda record: record.levelno < logging.WARNING)

    # 4. 控制台处理器 (stderr)，只显示 WARNING 及以上
    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setLevel(logging.WARNING)
    stderr_handler.setFormatter(log_formatter)

    # 5. 文件处理器，记录所有 DEBUG 及以上级别的日志
    log_dir = os.path.dirname(config.LOG_FILE_PATH)
    if log_dir and not os.path.exists(log_dir):
        os.makedirs(log_dir)
    file_handler = RotatingFileHandler(
        config.LOG_FILE_PATH,
        maxBytes=5 * 1024 * 1024,  # 5 MB
        backupCount=2,
        encoding='utf-8'
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(log_formatter)

    # 6. 为根 logger 添加所有处理器
    root_logger.addHandler(progress_handler)
    root_logger.addHandler(stderr_handler)
    root_logger.addHandler(file_handler)

    # 7. 调整第三方库的日志级别，屏蔽冗余输出
    logging.getLogger("sympy").setLevel(logging.WARNING)
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)


@dataclass
class Config:
    """一次命令行调用的运行参数：默认值来自 src.config，命令行参数优先"""

    genus: Optional[int] = None
    max_genus: Optional[int] = None
    kappa: int = 1
    threads: int = config.THREADS
    seed: int = config.SEED
    output_format: str = config.DEFAULT_FORMAT
    out: Optional[str] = None
    fail_on_violation: bool = False
    include_runtime: bool = True

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError(f"--threads must be >= 1, got {self.threads}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"Unknown format {self.output_format!r}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Config":
        return cls(
            genus=getattr(args, "genus", None),
            max_genus=getattr(args, "max_genus", None),
            kappa=1 if getattr(args, "kappa", None) is None else args.kappa,
            threads=args.threads if args.threads is not None else config.THREADS,
            seed=args.seed if args.seed is not None else config.SEED,
            output_format=args.format,
            out=args.out,
            fail_on_violation=args.fail_on_violation,
            include_runtime=not args.omit_runtime,
        )


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="工作进程数（默认读取 SEMICURVE_THREADS）")
    common.add_argument("--seed", type=int, default=None, help="map_degree 采样使用的随机种子")
    common.add_argument("--format", choices=("json", "csv"), default=config.DEFAULT_FORMAT)
    common.add_argument("--out", default=None, help="输出文件路径，默认写到标准输出")
    common.add_argument("--fail-on-violation", action="store_true", help="有违例时以退出码 1 结束")
    common.add_argument("--omit-runtime", action="store_true", help="不输出耗时、内存等运行信息")

    parser = argparse.ArgumentParser(prog="semicurve", description="数值半群、Weierstrass 权重与曲线的计算工具")
    sub = parser.add_subparsers(dest="command", required=True)

    tree = sub.add_parser("tree", help="半群树")
    tree_sub = tree.add_subparsers(dest="action", required=True)
    count = tree_sub.add_parser("count", parents=[common], help="按亏格计数")
    count.add_argument("--max-genus", "--genus", dest="max_genus", type=int, required=True,
                       help="计数到该亏格为止（--genus 为同义写法）")
    dump = tree_sub.add_parser("dump", parents=[common], help="列出某一亏格的全部半群")
    dump.add_argument("--genus", type=int, required=True)

    semigroup = sub.add_parser("semigroup", help="单个半群")
    semigroup_sub = semigroup.add_subparsers(dest="action", required=True)
    tableau = sub.add_parser("tableau", help="Young 图")
    tableau_sub = tableau.add_subparsers(dest="action", required=True)
    for action, help_text in ((semigroup_sub.add_parser("info", parents=[common]), "semigroup"),
                              (tableau_sub.add_parser("render", parents=[common]), "tableau")):
        group = action.add_mutually_exclusive_group(required=True)
        group.add_argument("--gens", type=_int_list, help="生成元，例如 3,13,14")
        group.add_argument("--gaps", type=_int_list, help="间隙，例如 1,2,4,5,7")

    verify = sub.add_parser("verify", parents=[common], help="穷举核对")
    verify.add_argument("statement", choices=VERIFY_STATEMENTS)
    verify.add_argument("--genus", type=int, default=None)
    verify.add_argument("--max-genus", type=int, default=None)
    verify.add_argument("--kappa", type=int, default=None)
    verify.add_argument("--samples", type=int, default=20, help="genus3-family 的样本数")

    curve = sub.add_parser("curve", help="有理曲线")
    curve_sub = curve.add_subparsers(dest="action", required=True)
    for action in ("analyze", "gonality", "scroll", "hyperelliptic", "bielliptic"):
        p = curve_sub.add_parser(action, parents=[common])
        p.add_argument("file", help="JSON / TOML / YAML 曲线文件")
        p.add_argument("--u", default=None, help="u = f/h，写成 f,h")
    embedding = curve_sub.add_parser("embedding", parents=[common], help="单项式嵌入与卷轴核对")
    embedding.add_argument("kind", choices=("hyperelliptic", "bielliptic-symmetric", "bielliptic-nonsymmetric"))
    embedding.add_argument("--genus", type=int, required=True)
    return parser


# --- 各子命令 ---
def _semigroup_from_args(args: argparse.Namespace):
    if args.gens is not None:
        return numset_service.from_generators(args.gens)
    return numset_service.from_gaps(args.gaps)


def _emit_payload(cfg: Config, payload: Any, kind: str) -> None:
    if cfg.output_format == "csv":
        if isinstance(payload, dict):
            text = report_writer.to_csv(("key", "value"), report_writer.mapping_rows(payload), kind)
        else:
            raise ValueError(f"{kind} has no CSV form")
    else:
        text = report_writer.to_json(payload)
    report_writer.emit(text, cfg.out)


def _cmd_tree(args: argparse.Namespace, cfg: Config) -> int:
    if args.action == "count":
        if cfg.max_genus > config.MAX_COUNT_GENUS:
            raise SemigroupError(f"--max-genus exceeds the counting budget {config.MAX_COUNT_GENUS}")
        counts = tree_service.count_by_genus(cfg.max_genus, cfg.threads)
        if cfg.output_format == "csv":
            rows = [[g, n] for g, n in enumerate(counts)]
            report_writer.emit(report_writer.to_csv(("g", "count"), rows, "tree-count"), cfg.out)
        else:
            report_writer.emit(report_writer.to_json({"max_genus": cfg.max_genus, "counts": counts}), cfg.out)
        return EXIT_OK

    if cfg.genus > config.MAX_SCAN_GENUS:
        raise SemigroupError(f"--genus exceeds the scan budget {config.MAX_SCAN_GENUS}")
    reports = [numset_service.weight_report(s) for s in tree_service.iter_genus(cfg.genus)]
    if cfg.output_format == "csv":
        text = report_writer.to_csv(WeightReport.CSV_COLUMNS, [r.to_csv_row() for r in reports], "tree-dump")
    else:
        text = report_writer.to_json({"genus": cfg.genus, "semigroups": [r.to_dict() for r in reports]})
    report_writer.emit(text, cfg.out)
    return EXIT_OK


def _emit_scan(cfg: Config, report: ScanReport) -> int:
    if cfg.output_format == "csv":
        header, rows = report.csv_rows()
        text = report_writer.to_csv(header, rows, report.statement)
    else:
        text = report_writer.to_json(report.to_dict(include_runtime=cfg.include_runtime))
    report_writer.emit(text, cfg.out)
    if not report.ok:
        logging.getLogger(__name__).warning(f"{report.statement}: {report.violated} 个违例")
    return EXIT_VIOLATION if cfg.fail_on_violation and not report.ok else EXIT_OK


def _cmd_verify(args: argparse.Namespace, cfg: Config) -> int:
    scan_service.threads = cfg.threads
    statement = args.statement
    if statement in ("lemma-k", "leaf-law"):
        g_max = cfg.max_genus if cfg.max_genus is not None else (8 if statement == "lemma-k" else 12)
        fn = scan_service.scan_lemma_weight_relation if statement == "lemma-k" else scan_service.scan_leaf_law
        return _emit_scan(cfg, fn(g_max))
    if statement in ("max-weight", "submaximal", "kappa-bounds"):
        if cfg.genus is None:
            raise ValueError(f"verify {statement} needs --genus")
        if statement == "max-weight":
            return _emit_scan(cfg, scan_service.scan_max_weight(cfg.genus))
        if statement == "submaximal":
            return _emit_scan(cfg, scan_service.scan_submaximal(cfg.genus))
        return _emit_scan(cfg, scan_service.scan_kappa_weight_bounds(cfg.kappa, cfg.genus))
    if statement in ("conjecture", "torres"):
        if cfg.max_genus is None:
            raise ValueError(f"verify {statement} needs --max-genus")
        g_min = cfg.genus if cfg.genus is not None else 2 * cfg.kappa
        fn = scan_service.scan_conjecture if statement == "conjecture" else scan_service.scan_torres
        return _emit_scan(cfg, fn(cfg.kappa, g_min, cfg.max_genus))
    samples = scan_service.default_genus3_samples(args.samples, cfg.seed)
    return _emit_scan(cfg, scan_service.scan_genus3_family(samples))


def _cmd_curve(args: argparse.Namespace, cfg: Config) -> int:
    if args.action == "embedding":
        if args.kind == "hyperelliptic":
            curve, layout = scroll_service.hyperelliptic_embedding(cfg.genus)
        else:
            symmetric, nonsymmetric = numset_service.bielliptic_semigroups(cfg.genus)
            s = symmetric if args.kind == "bielliptic-symmetric" else nonsymmetric
            curve, layout = scroll_service.bielliptic_embedding(s)
        payload = {
            "curve": curve.to_dict(),
            "layout": layout.to_dict(),
            "contained": scroll_service.verify_scroll_containment(curve, layout),
        }
        _emit_payload(cfg, payload, "curve-embedding")
        return EXIT_OK

    loaded = load_curve_file(args.file)
    curve = loaded.curve
    u = parse_pair(args.u) if args.u else loaded.u
    if args.action == "analyze":
        payload = curve_service.analyze(curve, u=u, sections=None if u is not None else loaded.sections)
    elif args.action == "gonality":
        payload = {
            "curve": curve_summary(loaded),
            "semigroup": local_algebra_service.semigroup(curve).describe(),
            "gonality": gonality_service.gonality_bounds(curve).to_dict(),
        }
    elif args.action == "scroll":
        payload = {"curve": curve_summary(loaded), "scroll": scroll_service.scroll_codimension(curve).to_dict()}
    elif args.action == "hyperelliptic":
        payload = {
            "curve": curve_summary(loaded),
            "hyperelliptic": classification_service.is_hyperelliptic_curve(curve).to_dict(),
        }
    else:
        payload = {
            "curve": curve_summary(loaded),
            "bielliptic": classification_service.is_bielliptic_curve(curve).to_dict(),
        }
        if u is not None or loaded.sections is not None:
            payload["g83"] = classification_service.g83_construction(
                curve, u=u, sections=None if u is not None else loaded.sections
            ).to_dict()
    _emit_payload(cfg, payload, f"curve-{args.action}")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行入口，返回退出码：0 成功，1 有违例（且指定了 --fail-on-violation），2 输入错误。
    """
    log = logging.getLogger(__name__)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 在 --help 时以 0 退出，参数错误时以 2 退出
        return int(e.code or 0)

    try:
        cfg = Config.from_args(args)
        pencil_service.seed = cfg.seed
        gonality_service.seed = cfg.seed
        if args.command == "tree":
            return _cmd_tree(args, cfg)
        if args.command in ("semigroup", "tableau"):
            s = _semigroup_from_args(args)
            if args.command == "semigroup":
                _emit_payload(cfg, numset_service.info(s), "semigroup-info")
            else:
                payload = tableau_service.render_pair(s)
                if s.genus >= 1:
                    payload["top_rows"] = list(tableau_service.top_row_lengths(s))
                _emit_payload(cfg, payload, "tableau-render")
            return EXIT_OK
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        return _cmd_curve(args, cfg)
    except (CurveFileError, SemigroupError, CurveError, SeriesError, ValueError) as e:
        log.debug("输入错误", exc_info=True)
        print(f"semicurve: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main():
    setup_logging()
    sys.exit(run())


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        logging.getLogger(__name__).info("通过键盘中断退出。")
        sys.exit(130)
