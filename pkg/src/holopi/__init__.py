"""holopi: exact verification of holonomic binomial-sum identities and
high-precision certification of Ramanujan-type 1/pi series."""

from .numerics import BigRational, HPReal, QuadraticNumber, pi_oracle
from .series import LaurentSlice, TruncatedSeries

__all__ = [
    "BigRational",
    "HPReal",
    "QuadraticNumber",
    "pi_oracle",
    "LaurentSlice",
    "TruncatedSeries",
]

__version__ = "0.1.0"
