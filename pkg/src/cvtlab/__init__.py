"""Multi-operand carry value (CVT) and modular-sum (XOR) arithmetic in any base."""

from cvtlab.digitvec import (
    DigitVector,
    GeneralizedDigitVector,
    shift_down,
    shift_up,
    to_digits,
    valuation,
)
from cvtlab.errors import InvariantViolation
from cvtlab.transforms import (
    RuleTable,
    cvt_multi,
    cvt_pair,
    ivt_apply,
    sum_identity_check,
    xor_multi,
    xor_pair,
)

__version__ = "0.1.0"
