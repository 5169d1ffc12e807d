# -*- coding: utf-8 -*-

"""
半群树枚举与扫描相关的参数。
"""

# --- 树枚举 ---
# 并行时按 ⌈g/SPLIT_DIVISOR⌉ 层切分子树分发给进程池
SPLIT_DIVISOR = 3
# 低于该亏格时并行的启动开销大于收益，直接顺序执行
PARALLEL_MIN_GENUS = 9
# 分解数数组长度 = DECOMPOSITION_FACTOR * 目标亏格 + DECOMPOSITION_PADDING
DECOMPOSITION_FACTOR = 3
DECOMPOSITION_PADDING = 3

# --- 暴力核对 ---
# 间隙子集暴力枚举只用于小亏格
BRUTE_FORCE_MAX_GENUS = 10

# --- 渲染 ---
BOX_TOP = "□"
BOX_T1 = "■"
