"""Creative telescoping with exact arithmetic: discover and certify recurrences
for parametrized binomial sums and polynomial-power integrals."""

__version__ = "0.1.0"
