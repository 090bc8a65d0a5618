"""Adjoint action on g (x) g and g (x) g (x) g.

Elements are GradedTensor of variance 'uu' / 'uuu' (coefficients on
X_i (x) X_j ...).  The action of x is the graded derivation

    ad_x(a (x) b) = [x, a] (x) b + (-1)^{|x||a|} a (x) [x, b]

which is what [x (x) 1 + 1 (x) x, a (x) b] computes with Koszul-signed
tensor multiplication.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .graded import GradedTensor, sign

__all__ = ["ad_on_tensor", "ad_basis_on_tensor"]


def ad_basis_on_tensor(alg, x: int, t: GradedTensor) -> GradedTensor:
    """Action of the basis element X_x on a tensor of any rank."""
    g = alg.grading
    gx = g(x)
    out: Dict[Tuple[int, ...], object] = {}
    for key, c in t.entries.items():
        passed_parity = 0
        for slot, a in enumerate(key):
            s = sign(gx * passed_parity)
            for k, f in alg.bracket(x, a).items():
                new = key[:slot] + (k,) + key[slot + 1:]
                val = f * c if s > 0 else -(f * c)
                out[new] = out[new] + val if new in out else val
            passed_parity += g(a)
    return GradedTensor(g, t.variance, out)


def ad_on_tensor(alg, x: Dict[int, object], t: GradedTensor) -> GradedTensor:
    """Action of a homogeneous vector x = sum x_i X_i."""
    out = GradedTensor(alg.grading, t.variance, {})
    for i, a in x.items():
        if a:
            out = out + ad_basis_on_tensor(alg, i, t).scale(a)
    return out

