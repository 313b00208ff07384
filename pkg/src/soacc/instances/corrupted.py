"""A deliberately broken Temperley-Lieb oracle, used as a negative control.

Composites of two endomorphisms of ``n`` whose cells both lie strictly below
``n`` pick up a spurious ``1_n`` term. Identities still behave, so validation
gets past the singleton/identity checks and must reject the ideal property.
"""

from __future__ import annotations

from ..cellular import BasisKey, Morphism
from .tl import TemperleyLieb

__all__ = ["CorruptedTL"]


class CorruptedTL(TemperleyLieb):
    name = "corrupted-tl"

    def compose_basis(self, f: BasisKey, g: BasisKey, source, middle, target) -> Morphism:
        out = super().compose_basis(f, g, source, middle, target)
        n = source
        if source == middle == target and f.cell < n and g.cell < n:
            out = out + self.identity(n)
        return out
