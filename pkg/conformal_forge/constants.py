"""Constants for conformal_forge."""

from fractions import Fraction


# Formal variable names used in bracket polynomials
LAMBDA = "λ"
MU = "μ"
NU = "ν"
PARTIAL = "∂"

# Deterministic seed for every random sampler unless overridden
DEFAULT_SEED = 1729
SEED_ENV_VAR = "CONFORMAL_FORGE_SEED"

# Truncation and sampling defaults for analysis runs
DEFAULT_DPOW_BOUND = 2
DEFAULT_TRIALS = 20
DEFAULT_SAMPLES = 100
DEFAULT_OUTPUT_FORMAT = "text"

# Coefficients drawn for random generators: (real, imaginary) parts
RANDOM_COEFFICIENTS = (
    (Fraction(1), Fraction(0)),
    (Fraction(-1), Fraction(0)),
    (Fraction(2), Fraction(0)),
    (Fraction(1, 2), Fraction(0)),
    (Fraction(-3), Fraction(0)),
    (Fraction(0), Fraction(1)),
)

# Mode range used when sampling coefficient-algebra elements
DEFAULT_MODE_RANGE = (-3, 3)

# Recognised family tags
FAMILIES = ("Vir", "Cur", "Table", "A1", "CL1", "A2", "CL2", "A3", "CL3", "CL3_b0", "OsbornA")

# Families whose make_family result is a conformal algebra
CONFORMAL_FAMILIES = ("Vir", "Cur", "Table", "CL1", "CL2", "CL3", "CL3_b0")

# Families whose bracket may be replaced by k(a∘b − b∘a)
K_FAMILIES = ("A1", "A2", "A3", "OsbornA", "Table")

# Families with a closed-form coefficient bracket
CLOSED_FORM_FAMILIES = ("Vir", "CL1", "CL2", "CL3", "CL3_b0")

# Ideal kinds understood by the closure engine
IDEAL_KINDS = ("novikov", "lie", "nj", "gd", "conformal")

# Variants of the four-argument identity satisfied by the star product
TORTKEN_VARIANTS = ("printed", "corrected")

REPORT_SCHEMA_NAME = "report.schema.json"
