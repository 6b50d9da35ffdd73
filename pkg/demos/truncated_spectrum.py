"""Eigenvalues of truncated pencils: a real spectrum, a complex pair and a
double root with a two-dimensional eigenspace.

Run: python3 demos/truncated_spectrum.py
"""
from pencil_lab import PencilData, factorization_check, orthogonality_report, pencil_eigs


def show(name, pencil, j):
    spec = pencil_eigs(pencil, j)
    c, ok = factorization_check(pencil, j)
    rep = orthogonality_report(spec)
    print(f"{name} (j={j}): D_j = {spec.charpoly}")
    print(f"  factorisation constant {c}, identity holds: {ok}")
    for lam, mult in zip(spec.eigenvalues, spec.multiplicities):
        print(f"  eigenvector for λ = {complex(lam):.6g} (algebraic multiplicity {mult})")
    print(f"  bilinear orthogonality ok: {rep.bilinear_ok}\n")


ones = [1] * 8
complex_pair = PencilData(ones, [0] * 8, [(-1) ** k for k in range(8)], [0] * 8, ones, 1, 0)
double_root = PencilData(ones, [0] * 8, [0] * 8, ones, ones, 1, 0)

show("complex pair", complex_pair, 2)
show("double root", double_root, 2)
show("complex pair, deeper", complex_pair, 5)
