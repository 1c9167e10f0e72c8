"""Masked Gaussian elimination toolkit over small binary fields.

Subpackages by layer: gf (field arithmetic), masking (sharings, cost
counters, auxiliary gadgets), rowops (shared-row gadgets), linalg
(unmasked oracle and the masked solver), costmodel (closed-form op and
randomness counts plus the tabulated scheme comparison), probelab
(probing-model leakage checks), cli (command line front end).
"""

from .gf import FieldSpec, field_new, gf_add, gf_mul, gf_inv

__all__ = ["FieldSpec", "field_new", "gf_add", "gf_mul", "gf_inv"]

__version__ = "0.1.0"
