# -*- coding: utf-8 -*-

"""
存储项目中的非敏感、硬编码的常量，以及从环境变量读取的默认值。
"""

import os

# --- 路径配置 ---
# 项目根目录
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
# 数据存储目录（日志、扫描报告默认输出位置）
DATA_DIR = os.path.join(BASE_DIR, 'data')
# 随仓库提供的示例曲线文件
EXAMPLES_DIR = os.path.join(BASE_DIR, 'curves')


def _parse_int(env_var: str, default: int, minimum: int = 0) -> int:
    """从环境变量中解析整数，解析失败或低于下限时回退到默认值"""
    raw = os.getenv(env_var)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        return default
    return value if value >= minimum else default


# --- 并行与可复现性 ---
# 树枚举与扫描使用的工作进程数，命令行 --threads 优先
THREADS = _parse_int("SEMICURVE_THREADS", 1, minimum=1)
# map_degree 采样点使用的随机种子，固定以保证输出可复现
SEED = _parse_int("SEMICURVE_SEED", 20240601)

# --- 亏格预算 ---
MAX_SCAN_GENUS = _parse_int("SEMICURVE_MAX_SCAN_GENUS", 16, minimum=0)  # 完整权重扫描
MAX_COUNT_GENUS = _parse_int("SEMICURVE_MAX_COUNT_GENUS", 30, minimum=0)  # 仅计数

# --- 输出 ---
DEFAULT_FORMAT = "json"
# CSV 列顺序冻结，版本号写入表头注释
CSV_SCHEMA_VERSION = 1

# --- 日志相关 ---
LOG_LEVEL = os.getenv("SEMICURVE_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE_PATH = os.getenv("SEMICURVE_LOG_FILE", os.path.join(DATA_DIR, "semicurve_debug.log"))  # DEBUG 日志文件路径
