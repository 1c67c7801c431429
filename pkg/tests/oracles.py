"""Independent high-precision oracles used to freeze expected values.

Nothing here shares code with the package: the inverse is a plain
bisection on mpmath's erfc at 50 digits, the closed form is evaluated in
mp arithmetic, and the mutual-information mean comes from the eigenvalue
density integral.  Tests either call these directly (cheap points) or
assert against constants generated by them; regenerate with
``python tests/oracles.py``.
"""

from mpmath import mp

mp.dps = 50


def erfc_inv_bisect(y) -> mp.mpf:
    """Invert erfc by bisection; y in (0, 2)."""
    y = mp.mpf(y)
    lo, hi = mp.mpf(-30), mp.mpf(30)
    for _ in range(400):
        mid = (lo + hi) / 2
        if mp.erfc(mid) > y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def philip_mp(x) -> mp.mpf:
    """The closed-form approximation in mp arithmetic."""
    x = mp.mpf(x)
    return mp.sqrt(-mp.log(mp.sqrt(mp.pi) * x * mp.sqrt(-mp.log(x))))


def mi_mean_2x2(rho) -> mp.mpf:
    """Mean mutual information of a 2x2 link via the eigenvalue density.

    E[I] = int_0^inf log2(1 + rho l / 2) (l^2 - 2l + 2) e^-l dl.
    """
    rho = mp.mpf(rho)
    return mp.quad(
        lambda lam: mp.log(1 + rho * lam / 2, 2) * (lam**2 - 2 * lam + 2) * mp.exp(-lam),
        [0, mp.inf],
    )


if __name__ == "__main__":
    print("erfc_inv(0.2)   =", mp.nstr(erfc_inv_bisect("0.2"), 20))
    print("erfc_inv(0.1)   =", mp.nstr(erfc_inv_bisect("0.1"), 20))
    print("erfc_inv(2e-150)=", mp.nstr(erfc_inv_bisect(mp.mpf(2) * mp.mpf(10) ** -150), 20))
    print("philip(0.2)     =", mp.nstr(philip_mp("0.2"), 20))
    print("philip(2e-150)  =", mp.nstr(philip_mp(mp.mpf(2) * mp.mpf(10) ** -150), 20))
    print("philip(1e-300)  =", mp.nstr(philip_mp(mp.mpf(10) ** -300), 20))
    for r in (1, 5, 10, 20):
        print(f"E[I] 2x2 rho={r} =", mp.nstr(mi_mean_2x2(r), 20))
