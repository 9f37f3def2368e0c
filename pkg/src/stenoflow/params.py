"""Parameter containers for the tube geometry, forcing and fluid model.

All quantities are dimensionless. Defaults reproduce the reference
configuration used throughout the result set: a 25% cosine-bump
constriction on a unit-radius tube of length 5, pulsatile pressure
gradient plus periodic body acceleration, micropolar coupling K = 0.1
and Hartmann number H = 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class StenosisShape:
    """Geometry of the constricted tube wall.

    The wall is a cosine bump of depth ``delta`` occupying ``d < z < d + l0``
    on a tube of mean radius ``Rbar`` and length ``L``; the whole profile is
    modulated by a sinusoidal wall motion of amplitude ``Kr`` and phase
    ``phi_r``.
    """

    Rbar: float = 1.0
    delta: float = 0.25
    d: float = 2.0
    l0: float = 1.0
    Kr: float = 0.05
    phi_r: float = 0.0
    L: float = 5.0

    def validate(self):
        if not 0.0 <= self.delta < self.Rbar:
            raise ValueError("delta must satisfy 0 <= delta < Rbar")
        if self.l0 <= 0.0:
            raise ValueError("l0 must be > 0")
        if self.d < 0.0:
            raise ValueError("d must be >= 0")
        if self.d + self.l0 > self.L:
            raise ValueError("stenosis must fit inside the tube: d + l0 <= L")
        if not 0.0 <= self.Kr < 1.0:
            raise ValueError("Kr must satisfy 0 <= Kr < 1")
        if self.Rbar <= 0.0:
            raise ValueError("Rbar must be > 0")

    @property
    def throat(self) -> float:
        """Axial position of the narrowest section."""
        return self.d + 0.5 * self.l0

    def min_radius(self) -> float:
        """Tightest radius over all z and t; positive by construction."""
        return (self.Rbar - self.delta) * (1.0 - self.Kr)


@dataclass(frozen=True)
class ForcingParams:
    """Periodic body acceleration and pulsatile pressure gradient.

    body acceleration: a0*cos(b*t + phi_g)
    driving gradient:  Kbar + Kp*cos(t)   (the positive quantity -dp/dz)
    """

    a0: float = 1.0
    b: float = 1.0
    phi_g: float = 0.0
    Kbar: float = 7.30
    Kp: float = 1.46

    def validate(self):
        if self.a0 < 0.0:
            raise ValueError("a0 must be >= 0")
        if self.Kbar <= 0.0:
            raise ValueError("Kbar must be > 0")
        if self.Kp < 0.0:
            raise ValueError("Kp must be >= 0")
        if self.b <= 0.0:
            raise ValueError("b must be > 0")


@dataclass(frozen=True)
class DimensionlessParams:
    """Dimensionless groups of the coupled flow / microrotation / heat model."""

    K: float = 0.1        # rotational-to-dynamic viscosity ratio
    m: float = 0.1        # spin-gradient (couple stress) material constant
    J: float = 0.1        # micro-gyration parameter
    alpha: float = 3.0    # Womersley number
    H: float = 2.0        # Hartmann number
    Pr: float = 21.0      # Prandtl number
    Ec: float = 0.0002    # Eckert number
    f_p: float = 1.2      # pulse frequency used for the reported time axis
    shape: StenosisShape = field(default_factory=StenosisShape)
    forcing: ForcingParams = field(default_factory=ForcingParams)

    def validate(self):
        if self.alpha <= 0.0:
            raise ValueError("alpha must be > 0")
        if self.H < 0.0:
            raise ValueError("H must be >= 0")
        if self.Pr <= 0.0:
            raise ValueError("Pr must be > 0")
        if self.Ec < 0.0:
            raise ValueError("Ec must be >= 0")
        if self.K < 0.0:
            raise ValueError("K must be >= 0")
        if self.J <= 0.0:
            raise ValueError("J must be > 0")
        if self.m < 0.0:
            raise ValueError("m must be >= 0")
        if self.K > 0.0 and self.m <= 0.0:
            raise ValueError("m must be > 0 when K > 0")
        if self.f_p <= 0.0:
            raise ValueError("f_p must be > 0")
        self.shape.validate()
        self.forcing.validate()


@dataclass(frozen=True)
class NumericalParams:
    """Grid spacings, step counts and run policy.

    M and N are the last axial/radial node indices, so the grid carries
    (M+1) x (N+1) nodes with M*dz = L and N*dxi = 1.
    """

    dz: float = 0.05
    dxi: float = 0.025
    dt: float = 0.001
    M: int = 100
    N: int = 40
    warmup_periods: int = 3
    measure_periods: int = 1
    stability_margin: float = 0.8  # fraction of the stability limit used by dt='auto'

    def validate(self, L: float = 5.0):
        if self.dz <= 0.0 or self.dxi <= 0.0 or self.dt <= 0.0:
            raise ValueError("dz, dxi and dt must be > 0")
        if abs(self.M * self.dz - L) > 1e-12:
            raise ValueError(f"M*dz must equal L (got {self.M * self.dz!r} != {L!r})")
        if abs(self.N * self.dxi - 1.0) > 1e-12:
            raise ValueError(f"N*dxi must equal 1 (got {self.N * self.dxi!r})")
        if self.M < 4 or self.N < 4:
            raise ValueError("grid too coarse: need M >= 4 and N >= 4")
        if self.warmup_periods < 0:
            raise ValueError("warmup_periods must be >= 0")
        if self.measure_periods < 1:
            raise ValueError("measure_periods must be >= 1")
        if not 0.0 < self.stability_margin <= 1.0:
            raise ValueError("stability_margin must be in (0, 1]")

    @classmethod
    def from_spacings(cls, L: float, dz: float, dxi: float, dt: float, **kw) -> "NumericalParams":
        """Build grid counts from spacings, validating divisibility."""
        M = int(round(L / dz))
        N = int(round(1.0 / dxi))
        n = cls(dz=dz, dxi=dxi, dt=dt, M=M, N=N, **kw)
        n.validate(L)
        return n
