# -*- coding: utf-8 -*-
"""semicurve：数值半群权重、半群树与奇异有理曲线的计算。"""
