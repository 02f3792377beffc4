"""Exact verification of formal degree and root number identities for
tame supercuspidal representations of SL_n over p-adic fields."""

__version__ = "0.1.0"
