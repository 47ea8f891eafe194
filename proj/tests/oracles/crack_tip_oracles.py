"""Independent high-precision reference values for the crack-tip tests.

Run with `python3 crack_tip_oracles.py`; the printed numbers are frozen into
the C++ unit and acceptance tests. Everything here is mpmath adaptive
quadrature or closed-form elliptic integrals, with no shared code path with
the library.
"""
import mpmath as mp

mp.mp.dps = 30
c2 = 2 / mp.pi  # squared prefactor of the crack-tip field


def grad(x, y):
    rho = mp.sqrt(x * x + y * y)
    phi = mp.atan2(y, x)
    if phi <= 0:
        phi += 2 * mp.pi
    s = mp.sqrt(c2) / 2 / mp.sqrt(rho)
    return s * mp.cos(phi / 2), s * mp.sin(phi / 2)


def dirichlet_disk(cx, cy, r):
    d = mp.sqrt(cx * cx + cy * cy)
    if d < r:
        return 2 * r / mp.pi * mp.ellipe((d / r) ** 2)
    k = r / d
    return 2 * d / mp.pi * (mp.ellipe(k * k) - (1 - k * k) * mp.ellipk(k * k))


def circle_parts(cx, cy, r):
    """(tau, nu) on the circle |x - c| = r, split at the crack direction."""
    def integrand(which):
        def f(t):
            nx, ny = mp.cos(t), mp.sin(t)
            gx, gy = grad(cx + r * nx, cy + r * ny)
            dn = gx * nx + gy * ny
            dt = -gx * ny + gy * nx
            return r * (dt * dt if which == "tau" else dn * dn)
        return f
    # breakpoints: crack crossing angles and the direction of the tip
    pts = [mp.mpf(0)]
    d2 = cx * cx + cy * cy
    # crossings with the positive x-axis: cy + r sin t = 0, cx + r cos t > 0
    if abs(cy) < r:
        for t in (mp.asin(-cy / r), mp.pi - mp.asin(-cy / r)):
            if cx + r * mp.cos(t) > 0:
                pts.append(t % (2 * mp.pi))
    if d2 > 0:
        pts.append(mp.atan2(-cy, -cx) % (2 * mp.pi))
    pts = sorted(set(pts)) + [2 * mp.pi]
    tau = mp.quad(integrand("tau"), pts)
    nu = mp.quad(integrand("nu"), pts)
    return tau, nu


if __name__ == "__main__":
    for delta in ("0.01", "0.05", "0.1"):
        dd = mp.mpf(delta)
        dir_ = dirichlet_disk(dd, 0, 1)
        F = dir_ + (1 + dd) / 2
        print(f"delta={delta}: dirichlet={mp.nstr(dir_, 17)} F={mp.nstr(F, 17)} slope={mp.nstr((F - 1.5) / dd, 17)}")
    for (cx, cy, r) in [(0, "0.5", "0.6"), ("1", "0", "0.5"), ("1", "0", "2"), (0, "0.3", "1"), ("-0.4", "0.7", "1.3")]:
        cx, cy, r = mp.mpf(cx), mp.mpf(cy), mp.mpf(r)
        tau, nu = circle_parts(cx, cy, r)
        print(f"center=({cx},{cy}) r={r}: dirichlet_disk={mp.nstr(dirichlet_disk(cx, cy, r), 17)} "
              f"tau={mp.nstr(tau, 17)} nu={mp.nstr(nu, 17)}")
