"""Exact reals, ball arithmetic and g-expression jets."""

from .ball import BallReal, UnitValue, ball_exp, ball_pow, euler_ball, frac_mod_one
from .exact import ExactReal, refine
from .gexpr import Const, Exp, GExpr, Jet2, Pow1m, Product, Sum, X, eval_g_jet, power_jet
from .parsing import PHI, SILVER, parse_exact, parse_gexpr

__all__ = [
    "BallReal",
    "Const",
    "Exp",
    "ExactReal",
    "GExpr",
    "Jet2",
    "PHI",
    "Pow1m",
    "Product",
    "SILVER",
    "Sum",
    "UnitValue",
    "X",
    "ball_exp",
    "ball_pow",
    "euler_ball",
    "eval_g_jet",
    "frac_mod_one",
    "parse_exact",
    "parse_gexpr",
    "power_jet",
    "refine",
]
