"""Exact higher-genus log and open invariants of the Looijenga pair dP3(0,2).

Values are Laurent polynomials in ``s = q^(1/2)`` with integer coefficients
(:class:`LaurentPoly`) or quotients of them (:class:`QRational`).
"""

from ._backend import BACKEND
from .bps import dt_num, gv, lmov, lmov_from_open
from .errors import DivisibilityError, DomainError, IntegralityError, PoleError
from .gsum import g_enum, nlog_scat
from .invariants import CurveClass, GParams, g_closed, nlog_closed, open_closed, open_from_log
from .qalg import LaurentPoly, QRational, classical_limit, qbinom, qfact, qint
from .scattering import trace_nlog, wall_catalog

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CurveClass",
    "DivisibilityError",
    "DomainError",
    "GParams",
    "IntegralityError",
    "LaurentPoly",
    "PoleError",
    "QRational",
    "classical_limit",
    "dt_num",
    "g_closed",
    "g_enum",
    "gv",
    "lmov",
    "lmov_from_open",
    "nlog_closed",
    "nlog_scat",
    "open_closed",
    "open_from_log",
    "qbinom",
    "qfact",
    "qint",
    "trace_nlog",
    "wall_catalog",
]
