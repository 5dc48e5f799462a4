"""Degree-3 cohomology of Gamma_0(q) in SL(3,Z), Hecke eigenpackets and p-adic rigidity checks."""

import json

from . import _core
from ._core import (
    boundary_dim,
    code_version,
    cuspform_dim,
    h3_dim,
    hecke_charpoly,
    hecke_matrix,
    weight_module_dim,
)

DEFAULT_MODULI = (149, 151, 163)
DEFAULT_PRIMES = (2, 3, 5)

__all__ = [
    "boundary_dim",
    "certify_cuspidal",
    "code_version",
    "congruent",
    "cuspform_dim",
    "eisenstein_lift",
    "h3_dim",
    "hecke_charpoly",
    "hecke_matrix",
    "lift_cuspidal",
    "ordinary",
    "packets",
    "quasicuspidal",
    "rigidity",
    "weight_module_dim",
]


def certify_cuspidal(q, h, dims, cuspidal=None):
    """Verdict for computed dimensions given as {r: dim}."""
    return json.loads(_core.certify_cuspidal_json(q, h, dict(dims), cuspidal))


def packets(q, h, r, primes=DEFAULT_PRIMES, budget=6):
    """Record with h3_dim, boundary value and one summary per eigenpacket."""
    return json.loads(_core.packets_json(q, h, r, list(primes), budget))


def lift_cuspidal(q, h=0, moduli=DEFAULT_MODULI, primes=DEFAULT_PRIMES, budget=6):
    return json.loads(_core.lift_cuspidal_json(q, h, list(moduli), list(primes), budget))


def eisenstein_lift(q, primes=DEFAULT_PRIMES):
    return json.loads(_core.eisenstein_lift_json(q, list(primes)))


def quasicuspidal(lift, ell, p):
    return _core.quasicuspidal(json.dumps(lift), ell, p)


def ordinary(lift, p):
    return _core.ordinary(json.dumps(lift), p)


def congruent(a, b, p, primes=DEFAULT_PRIMES):
    return _core.congruent(json.dumps(a), json.dumps(b), p, list(primes))


def rigidity(q, p, witness=2, moduli=DEFAULT_MODULI, primes=DEFAULT_PRIMES, budget=6):
    return json.loads(_core.rigidity_json(q, p, witness, list(moduli), list(primes), budget))
