"""Bundled fusion rings: trivial, pointed Z/n, Fibonacci, Ising, Rep(S3)."""

from __future__ import annotations

from .fusion import FusionData


def trivial_ring() -> FusionData:
    return FusionData(("1",), "1", {("1", "1", "1"): 1}, {"1": "1"},
                      {"1": 1}, name="trivial")


def pointed_ring(n: int) -> FusionData:
    """Group ring of Z/n: c_{ik}^j = 1 iff i + k = j."""
    labels = tuple(f"g{i}" for i in range(n))
    mult = {(f"g{i}", f"g{k}", f"g{(i + k) % n}"): 1
            for i in range(n) for k in range(n)}
    dual = {f"g{i}": f"g{(-i) % n}" for i in range(n)}
    return FusionData(labels, "g0", mult, dual, {l: 1 for l in labels},
                      name=f"Z/{n}")


def fibonacci_ring() -> FusionData:
    mult = {
        ("1", "1", "1"): 1,
        ("1", "tau", "tau"): 1,
        ("tau", "1", "tau"): 1,
        ("tau", "tau", "1"): 1,
        ("tau", "tau", "tau"): 1,
    }
    return FusionData(("1", "tau"), "1", mult,
                      {"1": "1", "tau": "tau"}, {"1": 1, "tau": 1},
                      name="fibonacci")


def ising_ring() -> FusionData:
    labels = ("1", "eps", "sigma")
    mult = {}
    for a in labels:
        mult[("1", a, a)] = 1
        mult[(a, "1", a)] = 1
    mult.update({
        ("eps", "eps", "1"): 1,
        ("eps", "sigma", "sigma"): 1,
        ("sigma", "eps", "sigma"): 1,
        ("sigma", "sigma", "1"): 1,
        ("sigma", "sigma", "eps"): 1,
    })
    return FusionData(labels, "1", mult,
                      {l: l for l in labels}, {l: 1 for l in labels},
                      name="ising")


def rep_s3_ring() -> FusionData:
    labels = ("1", "sgn", "V")
    mult = {}
    for a in labels:
        mult[("1", a, a)] = 1
        mult[(a, "1", a)] = 1
    mult.update({
        ("sgn", "sgn", "1"): 1,
        ("sgn", "V", "V"): 1,
        ("V", "sgn", "V"): 1,
        ("V", "V", "1"): 1,
        ("V", "V", "sgn"): 1,
        ("V", "V", "V"): 1,
    })
    return FusionData(labels, "1", mult,
                      {l: l for l in labels}, {l: 1 for l in labels},
                      name="rep_s3")


def bundled_rings() -> dict:
    rings = {"trivial": trivial_ring(), "fibonacci": fibonacci_ring(),
             "ising": ising_ring(), "rep_s3": rep_s3_ring()}
    for n in range(2, 7):
        rings[f"z{n}"] = pointed_ring(n)
    return rings
