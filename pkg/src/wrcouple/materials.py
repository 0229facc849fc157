"""Material properties of the two coupled media."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Material:
    """Thermal coefficients of one subdomain.

    ``alpha`` (volumetric heat capacity) and ``diffusivity`` are derived,
    alpha = rho * cp and D = lambda / alpha.
    """

    name: str
    lambda_cond: float  # thermal conductivity, W/(m K)
    rho: float          # density, kg/m^3
    cp: float           # specific heat capacity, J/(kg K)
    alpha: float = field(init=False)
    diffusivity: float = field(init=False)

    def __post_init__(self):
        if self.lambda_cond <= 0.0:
            raise ValueError(f"thermal conductivity must be positive, got {self.lambda_cond}")
        if self.rho <= 0.0:
            raise ValueError(f"density must be positive, got {self.rho}")
        if self.cp <= 0.0:
            raise ValueError(f"heat capacity must be positive, got {self.cp}")
        object.__setattr__(self, "alpha", self.rho * self.cp)
        object.__setattr__(self, "diffusivity", self.lambda_cond / self.alpha)


#: Built-in material database (lambda, rho, cp).
MATERIALS = {
    "air": Material("air", 0.0243, 1.293, 1005.0),
    "water": Material("water", 0.58, 999.7, 4192.1),
    "steel": Material("steel", 48.9, 7836.0, 443.0),
}


def material_lookup(name: str) -> Material:
    """Return a database material, or parse a "lambda,rho,cp" triple."""
    key = name.strip().lower()
    if key in MATERIALS:
        return MATERIALS[key]
    if "," in name:
        parts = name.split(",")
        if len(parts) != 3:
            raise ValueError(f"custom material needs 3 comma-separated values, got {name!r}")
        lam, rho, cp = (float(p) for p in parts)
        return Material("custom", lam, rho, cp)
    known = ", ".join(sorted(MATERIALS))
    raise ValueError(f"unknown material {name!r}; available: {known} (or 'lambda,rho,cp')")
