"""Combinatorial signatures of complex polynomials and their stratification."""

from .signature import InvalidSignature, Signature, m_signatures, notation, parse_notation

__all__ = ["InvalidSignature", "Signature", "m_signatures", "notation", "parse_notation"]
__version__ = "0.1.0"
