"""The iterative modification oracle: repair depth one generic point at a time."""

from ..errors import NonterminationGuard, TorsionPresent
from ..homological import ModuleMap
from ..algebra.submodule import unit_vec
from .local import N_MAX, HullResult, local_hull
from .locus import low_depth_points
from .torsion import CenterSpec, tors_along


def iterative_hull(M, Z, n_max=N_MAX):
    """Local hulls along the generic points of the depth <= 1 locus inside Z, until none remain."""
    Z = CenterSpec.of(Z)
    if not tors_along(M, Z).is_zero():
        raise TorsionPresent("the module has sections supported on the center")
    cur = M
    tau = ModuleMap(M, M, [unit_vec(M.ring, i) for i in range(M.rank)])
    rounds = 0
    exponent = 0
    prev = None
    chosen = None
    while True:
        D = low_depth_points(cur, Z.ideal) if not cur.is_zero() else []
        keys = [P.key() for P in D]
        if prev is not None and (chosen in keys or not set(keys) <= set(prev)):
            raise NonterminationGuard("the depth-one locus did not shrink")
        if not D:
            break
        x = D[0]
        lh = local_hull(cur, CenterSpec(x.ideal), n_max)
        tau = lh.tau.compose(tau)
        cur = lh.hull
        exponent = max(exponent, lh.stabilization_exponent)
        rounds += 1
        prev = keys
        chosen = x.key()
    res = HullResult(M, cur, tau.certify(), "Z-torsion", exponent, center=Z)
    res.rounds = rounds
    return res
