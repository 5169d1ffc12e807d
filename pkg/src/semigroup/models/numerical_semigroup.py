# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Tuple


class SemigroupError(ValueError):
    """输入不构成合法的余有限集或数值半群时抛出"""

    pass


@dataclass(frozen=True)
class CofiniteSet:
    """
    补集有限的自然数子集 T（总含 0）。

    只存储导子以下的成员；[conductor, ∞) 全部属于 T。
    成员同时以位图形式保存，成员判定为 O(1)。
    """

    members_below_conductor: Tuple[int, ...]
    conductor: int
    _mask: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        members = tuple(self.members_below_conductor)
        object.__setattr__(self, "members_below_conductor", members)
        c = self.conductor
        if c < 0:
            raise SemigroupError(f"Negative conductor {c}")
        if c > 0:
            if not members or members[0] != 0:
                raise SemigroupError("0 must belong to the set")
            if members[-1] >= c:
                raise SemigroupError(f"Member {members[-1]} is not below the conductor {c}")
            if members[-1] == c - 1:
                raise SemigroupError(f"Conductor {c} is not minimal")
        elif members:
            raise SemigroupError("Conductor 0 means the whole of N; no members may be listed")
        mask = 0
        previous = -1
        for m in members:
            if m <= previous:
                raise SemigroupError("Members must be strictly increasing")
            previous = m
            mask |= 1 << m
        object.__setattr__(self, "_mask", mask)

    @classmethod
    def from_members(cls, members: Iterable[int], bound: int) -> "CofiniteSet":
        """
        由 bound 以下的成员构造（[bound, ∞) 视为全属于集合），并把导子压到最小。

        Args:
            members: bound 以下的成员，可无序、可重复。
            bound: 已知的导子上界。
        """
        below = {m for m in members if 0 <= m < bound}
        c = bound
        while c > 0 and (c - 1) in below:
            c -= 1
        return cls(tuple(sorted(m for m in below if m < c)), c)

    def __contains__(self, n: int) -> bool:
        if n >= self.conductor:
            return True
        return n >= 0 and bool(self._mask >> n & 1)

    @cached_property
    def gaps(self) -> Tuple[int, ...]:
        """补集 ℓ₁ < … < ℓ_g"""
        return tuple(n for n in range(self.conductor) if not self._mask >> n & 1)

    @property
    def genus(self) -> int:
        return self.conductor - len(self.members_below_conductor)

    @property
    def largest_gap(self) -> Optional[int]:
        return self.conductor - 1 if self.conductor > 0 else None

    @property
    def key(self) -> Tuple[Tuple[int, ...], int]:
        """与具体子类无关的集合标识，用于比较 S 与 K 这类不同类型的集合"""
        return self.members_below_conductor, self.conductor

    def members_upto(self, bound: int) -> List[int]:
        """[0, bound] 中的全部成员"""
        return [n for n in range(bound + 1) if n in self]

    def describe(self) -> str:
        """形如 {0,3,6,9,12,→} 的简写"""
        head = ",".join(str(m) for m in self.members_below_conductor)
        if self.conductor == 0:
            return "{0,→}"
        return "{" + head + f",{self.conductor},→" + "}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "members_below_conductor": list(self.members_below_conductor),
            "conductor": self.conductor,
            "gaps": list(self.gaps),
            "genus": self.genus,
        }


@dataclass(frozen=True)
class NumericalSemigroup(CofiniteSet):
    """
    加法封闭的余有限集。

    直接构造时只检查余有限集的不变量；加法封闭性由 numset_service 的
    from_gaps/from_generators 负责检查，树枚举内部也依赖这一点跳过重复检查。
    """

    @cached_property
    def multiplicity(self) -> int:
        """最小非零元"""
        if self.conductor == 0:
            return 1
        return self.members_below_conductor[1] if len(self.members_below_conductor) > 1 else self.conductor

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    @cached_property
    def minimal_generators(self) -> Tuple[int, ...]:
        if self.conductor == 0:
            return (1,)
        gens = []
        for s in range(1, self.conductor + self.multiplicity):
            if s not in self:
                continue
            decomposable = any(
                a in self and (s - a) in self for a in range(1, s // 2 + 1)
            )
            if not decomposable:
                gens.append(s)
        return tuple(gens)

    @property
    def embedding_dimension(self) -> int:
        return len(self.minimal_generators)

    def describe(self) -> str:
        return "<" + ",".join(str(g) for g in self.minimal_generators) + ">"

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["generators"] = list(self.minimal_generators)
        data["multiplicity"] = self.multiplicity
        return data


@dataclass
class WeightReport:
    """一个半群的权重与分类汇总，可序列化为 JSON 或 CSV 行。"""

    generators: List[int]
    g: int
    c: int
    W_S: int
    W_K: int
    g_prime: int
    symmetric: bool
    hyperelliptic: bool
    bielliptic: bool
    kappa: List[int] = field(default_factory=list)
    tech_hyp: Optional[bool] = None

    CSV_COLUMNS = (
        "generators", "g", "c", "W_S", "W_K", "symmetric",
        "hyperelliptic", "bielliptic", "kappa", "tech_hyp",
    )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": self.generators,
            "g": self.g,
            "c": self.c,
            "W_S": self.W_S,
            "W_K": self.W_K,
            "g_prime": self.g_prime,
            "symmetric": self.symmetric,
            "hyperelliptic": self.hyperelliptic,
            "bielliptic": self.bielliptic,
            "kappa": self.kappa,
            "tech_hyp": self.tech_hyp,
        }

    def to_csv_row(self) -> List[str]:
        return [
            " ".join(str(x) for x in self.generators),
            str(self.g),
            str(self.c),
            str(self.W_S),
            str(self.W_K),
            str(self.symmetric).lower(),
            str(self.hyperelliptic).lower(),
            str(self.bielliptic).lower(),
            " ".join(str(k) for k in self.kappa),
            "" if self.tech_hyp is None else str(self.tech_hyp).lower(),
        ]
