# -*- coding: utf-8 -*-

"""
曲线计算相关的参数：截断阶、采样点与格搜索预算。
"""

# --- 局部代数的截断 ---
# 初始截断阶 N = ORDER_FACTOR * (fᵢ 的最大次数) + ORDER_PADDING，不稳定时翻倍
ORDER_FACTOR = 4
ORDER_PADDING = 8
MAX_ORDER = 512

# --- map_degree ---
MAP_DEGREE_SAMPLES = 3
# 随机有理采样点 p/q 的范围
SAMPLE_NUMERATOR_RANGE = (-60, 60)
SAMPLE_DENOMINATOR_RANGE = (1, 17)

# --- 有理解搜索 ---
# (α, β) 方程组在 β 自由时依次尝试的取值
FREE_PARAMETER_TRIALS = ("0", "1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3")

# --- 格数估计 ---
# 投影中心使用的参数点（避开奇点 t = 0）
PROJECTION_POINTS = ("1", "-1", "2", "-2", "1/2", "3", "-1/2", "1/3")
# 随机分母 h 的个数（线性代数搜索 f/h ∈ O_P 的无基点铅笔）
GONALITY_SEARCH_BUDGET = 8
# 随机系数的绝对值上界
RANDOM_COEFFICIENT_BOUND = 5
# 报告中保留的见证铅笔数
WITNESS_LIMIT = 5
