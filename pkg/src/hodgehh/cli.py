"""Command-line driver: every computation as a subcommand with JSON output.

Exit status: 0 success, 2 invalid input, 3 budget exceeded, 4 a property
check failed.  Diagnostics go to standard error as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import reports
from .rings import parse_ring

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_CHECK = 0, 2, 3, 4


class CheckFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__("property check failed")
        self.payload = payload


@dataclass
class JobConfig:
    subcommand: str
    algebra: str | None = None
    space: str = "circle"
    max_degree: int = 3
    weight: int | None = None
    arity: int = 2
    level: int = 1
    ring: str | None = None
    output: str | None = None
    fmt: str = "json"
    threads: int = 1
    extra: dict = field(default_factory=dict)


# input resolution ---------------------------------------------------------------

BUILTIN_ALGEBRAS = {"dual_numbers": "dual_numbers.alg", "poly_x": "poly_x.alg", "poly_xy": "poly_xy.alg",
                    "trunc_x3": "trunc_x3.alg"}


def load_algebra(selector: str, ring_tag: str | None):
    from .loday import parse_algebra

    path = Path(selector)
    if path.exists():
        text, name = path.read_text(), path.stem
    else:
        key = selector.removesuffix(".alg")
        if key not in BUILTIN_ALGEBRAS:
            raise ValueError(f"no algebra file {selector!r} and no builtin of that name "
                             f"(builtins: {', '.join(sorted(BUILTIN_ALGEBRAS))})")
        text = resources.files("hodgehh").joinpath("data", BUILTIN_ALGEBRAS[key]).read_text()
        name = key
    if ring_tag is not None:
        parse_ring(ring_tag)
        lines = [ln for ln in text.splitlines() if not ln.strip().startswith("RING")]
        text = f"RING {ring_tag}\n" + "\n".join(lines) + "\n"
    return parse_algebra(text, name)


def load_space(selector: str, truncation: int):
    from .simplicial import product, standard_circle, standard_sphere

    def one(s: str):
        s = s.strip()
        if s == "circle":
            return standard_circle(truncation)
        if s.startswith("sphere"):
            d = s.removeprefix("sphere").lstrip(":")
            if not d.isdigit() or int(d) < 1:
                raise ValueError(f"bad sphere selector {s!r}")
            return standard_sphere(int(d), truncation)
        raise ValueError(f"unknown space {s!r}; use circle, sphere:D or product:A,B,...")

    if selector.startswith("product:"):
        parts = selector.removeprefix("product:").split(",")
        return product(*[one(p) for p in parts], truncation=truncation, name=selector)
    if selector.startswith("torus:"):
        m = int(selector.removeprefix("torus:"))
        return product(*[one("circle")] * m, truncation=truncation, name=selector)
    return one(selector)


def load_category(selector: str):
    from .fincat import FinCat, discrete, groupoid_pair, ordinal, terminal

    path = Path(selector)
    if path.exists():
        return FinCat.from_text(path.read_text())
    if selector.startswith("ordinal:"):
        return ordinal(int(selector.removeprefix("ordinal:")))
    if selector.startswith("discrete:"):
        return discrete(range(int(selector.removeprefix("discrete:"))))
    if selector == "terminal":
        return terminal()
    if selector == "groupoid":
        return groupoid_pair()
    raise ValueError(f"unknown category {selector!r}; use a file, ordinal:N, discrete:N, terminal or groupoid")


def _pmap(fn, items, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


# subcommands ---------------------------------------------------------------------

def _loday(cfg: JobConfig, with_space: bool):
    from .loday import loday_complex
    from .simplicial import standard_circle

    R = load_algebra(cfg.algebra, cfg.ring)
    top = max(cfg.max_degree + 1, 2)
    X = load_space(cfg.space, top) if with_space else standard_circle(top)
    L = loday_complex(R, X, cfg.max_degree, cfg.weight)
    return R, X, L


def cmd_hh(cfg: JobConfig) -> dict:
    R, X, L = _loday(cfg, with_space=False)
    return reports.homology_report(L, R.name, "circle", R.ring.name)


def cmd_loday(cfg: JobConfig) -> dict:
    R, X, L = _loday(cfg, with_space=True)
    return reports.homology_report(L, R.name, cfg.space, R.ring.name)


def cmd_loday_coeff(cfg: JobConfig) -> dict:
    from .loday import augmentation_module, free_module, loday_with_coefficients

    R = load_algebra(cfg.algebra, cfg.ring)
    M = {"ground": augmentation_module, "free": free_module}[cfg.extra["module"]](R)
    X = load_space(cfg.space, max(cfg.max_degree + 1, 2))
    L = loday_with_coefficients(R, M, X, cfg.max_degree, cfg.weight)
    return reports.homology_report(L, R.name, f"{cfg.space} with {cfg.extra['module']} coefficients",
                                   R.ring.name)


def cmd_filtration(cfg: JobConfig) -> dict:
    R, X, L = _loday(cfg, with_space=True)
    levels = [cfg.level] if cfg.extra.get("level_given") else range(0, (L.weight_bound or cfg.max_degree + 1) + 1)
    return reports.filtration_report(L, R.name, levels)


def cmd_layers(cfg: JobConfig) -> dict:
    X = load_space(cfg.space, 8)
    rep = reports.layer_report(X, cfg.space, cfg.arity, cfg.level, cfg.extra.get("adams", ()))
    if rep["sign_check"] != "pass":
        raise CheckFailed(rep)
    return rep


def cmd_adams(cfg: JobConfig) -> dict:
    R, X, L = _loday(cfg, with_space=False)
    return reports.hodge_report(L, R.name, cfg.extra["r"])


def cmd_hodge_q(cfg: JobConfig) -> dict:
    R, X, L = _loday(cfg, with_space=False)
    return reports.hodge_report(L, R.name, None)


def cmd_tw(cfg: JobConfig) -> dict:
    from .simplicial import SimplicialError, nerve, nerve_comparison, twisted

    top = cfg.max_degree
    if cfg.extra.get("category"):
        C = load_category(cfg.extra["category"])
        X = nerve(C, 2 * top + 1)
        name = cfg.extra["category"]
    else:
        C = None
        X = load_space(cfg.space, 2 * top + 1)
        name = cfg.space
    T = twisted(X, top)
    try:
        T.check_identities(top)
        ident = "pass"
    except SimplicialError:
        ident = "fail"
    comp = "n/a"
    if C is not None:
        comp = "pass" if nerve_comparison(C, top)[1] else "fail"
    rep = reports.tag({"space": name, "counts": [T.count(n) for n in range(top + 1)], "identities": ident,
                       "nerve_comparison": comp}, "twisted")
    if "fail" in (ident, comp):
        raise CheckFailed(rep)
    return rep


def cmd_check_categories(cfg: JobConfig) -> dict:
    from .fincat.checks import run_categorical_suite

    res = run_categorical_suite(cfg.extra["corpus"])
    res.pop("seconds", None)
    rep = reports.check_report("categories", res, res["passed"])
    if not res["passed"]:
        raise CheckFailed(rep)
    return rep


def _truncation_instance(mn):
    from .hodge_geom import alpha_model_check
    from .simplicial import standard_circle

    m, n = mn
    r = alpha_model_check(standard_circle(), m, n)
    return {"arity": m, "bound": n, "equal": r["equal"],
            "holim": [x.to_json() for x in r["holim"]], "alpha": [x.to_json() for x in r["alpha"]]}


def cmd_check_truncation(cfg: JobConfig) -> dict:
    items = [(m, n) for m in range(1, cfg.arity + 1) for n in range(m + 1)]
    rows = _pmap(_truncation_instance, items, cfg.threads)
    passed = all(r["equal"] for r in rows)
    rep = reports.check_report("truncation", {"instances": rows}, passed)
    if not passed:
        raise CheckFailed(rep)
    return rep


def _layer_instance(n):
    from .hodge_geom import adams_layer_map, hodge_layer, rank_ladder, sign_of, symmetric_action
    from .simplicial import standard_circle

    L = hodge_layer(standard_circle(), n, n)
    hom = L.homology()
    conc = [(r.degree, r.betti, r.torsion) for r in hom] == [(n, 1, ())]
    perms = []
    for i in range(n):
        for j in range(i + 1, n):
            p = list(range(n))
            p[i], p[j] = p[j], p[i]
            perms.append(tuple(p))
    if n >= 3:
        perms.append(tuple((k + 1) % 3 if k < 3 else k for k in range(n)))
    signs = conc and all(symmetric_action(L, p) == [[sign_of(p)]] for p in perms)
    adams = {r: (adams_layer_map(L, r) == [[r ** n]]) if conc else False for r in (-1, 2, 3)}
    ladder = rank_ladder(n)
    ok = conc and signs and all(adams.values()) and ladder["ok"]
    return {"level": n, "homology": [r.to_json() for r in hom], "concentrated": conc, "signs": signs,
            "adams": {str(r): v for r, v in adams.items()}, "ladder": ladder["ok"], "ok": ok}


def cmd_check_layers(cfg: JobConfig) -> dict:
    rows = _pmap(_layer_instance, list(range(1, cfg.level + 1)), cfg.threads)
    passed = all(r["ok"] for r in rows)
    rep = reports.check_report("layers", {"levels": rows}, passed)
    if not passed:
        raise CheckFailed(rep)
    return rep


COMMANDS = {
    "hh": cmd_hh,
    "loday": cmd_loday,
    "loday-coeff": cmd_loday_coeff,
    "filtration": cmd_filtration,
    "layers": cmd_layers,
    "adams": cmd_adams,
    "hodge-q": cmd_hodge_q,
    "tw": cmd_tw,
    "check-categories": cmd_check_categories,
    "check-truncation": cmd_check_truncation,
    "check-layers": cmd_check_layers,
}


# argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hodgehh", description="Exact Hochschild, Loday and Hodge-layer computations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of standard output")
    common.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    common.add_argument("--threads", type=int, default=1, help="cap on worker processes")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def alg(sp, space=False):
        sp.add_argument("--algebra", required=True, help="algebra file or builtin name")
        sp.add_argument("--ring", help="override the coefficient ring (Z, Q or Fp)")
        sp.add_argument("--max-degree", type=int, default=3)
        sp.add_argument("--weight", type=int, help="weight bound W")
        if space:
            sp.add_argument("--space", default="circle", help="circle, sphere:D, torus:M or product:A,B,...")

    alg(sub.add_parser("hh", parents=[common], help="Hochschild homology (Loday over the circle)"))
    alg(sub.add_parser("loday", parents=[common], help="homology of the Loday construction"), space=True)
    sp = sub.add_parser("loday-coeff", parents=[common], help="Loday construction with module coefficients")
    alg(sp, space=True)
    sp.add_argument("--module", choices=["ground", "free"], default="ground")
    sp = sub.add_parser("filtration", parents=[common], help="layers of the weight filtration")
    alg(sp, space=True)
    sp.add_argument("--level", type=int)
    sp = sub.add_parser("layers", parents=[common], help="Hodge layer of a truncated power")
    sp.add_argument("--space", default="circle")
    sp.add_argument("--arity", type=int, default=2)
    sp.add_argument("--level", type=int, default=2)
    sp.add_argument("--adams", type=int, action="append", default=[], help="degree r (repeatable)")
    sp = sub.add_parser("adams", parents=[common], help="Adams operation on rational HH")
    alg(sp)
    sp.add_argument("--r", type=int, required=True)
    alg(sub.add_parser("hodge-q", parents=[common], help="Hodge decomposition of rational HH"))
    sp = sub.add_parser("tw", parents=[common], help="twisted arrow construction")
    sp.add_argument("--space", default="circle")
    sp.add_argument("--category", help="category file, ordinal:N, discrete:N, terminal or groupoid")
    sp.add_argument("--max-degree", type=int, default=3)
    sp = sub.add_parser("check-categories", parents=[common], help="end/coend/Kan identities over the corpus")
    sp.add_argument("--corpus", choices=["tiny", "small"], default="small")
    sp = sub.add_parser("check-truncation", parents=[common],
                        help="truncated power versus the alpha subcomplex, circle, all n <= m")
    sp.add_argument("--max-arity", type=int, default=4)
    sp = sub.add_parser("check-layers", parents=[common], help="layer homology, sign action, Adams and rank ladder")
    sp.add_argument("--max-level", type=int, default=3)
    return p


def config_from_args(a: argparse.Namespace) -> JobConfig:
    cfg = JobConfig(a.subcommand, output=a.output, fmt=a.fmt, threads=max(1, a.threads))
    for k in ("algebra", "space", "ring", "weight", "arity"):
        if getattr(a, k, None) is not None:
            setattr(cfg, k, getattr(a, k))
    if getattr(a, "max_degree", None) is not None:
        cfg.max_degree = a.max_degree
    if getattr(a, "level", None) is not None:
        cfg.level = a.level
        cfg.extra["level_given"] = True
    if a.subcommand == "loday-coeff":
        cfg.extra["module"] = a.module
    if a.subcommand == "layers":
        cfg.extra["adams"] = tuple(a.adams)
    if a.subcommand == "adams":
        cfg.extra["r"] = a.r
    if a.subcommand == "tw":
        cfg.extra["category"] = a.category
    if a.subcommand == "check-categories":
        cfg.extra["corpus"] = a.corpus
    if a.subcommand == "check-truncation":
        cfg.arity = a.max_arity
    if a.subcommand == "check-layers":
        cfg.level = a.max_level
    _validate(cfg)
    return cfg


def _validate(cfg: JobConfig) -> None:
    from .hodge_geom import DEFAULT_ARITY_BUDGET

    if cfg.ring is not None:
        parse_ring(cfg.ring)
    if cfg.max_degree < 0:
        raise ValueError("--max-degree must be >= 0")
    if cfg.weight is not None and cfg.weight < 0:
        raise ValueError("--weight must be >= 0")
    if cfg.subcommand in ("layers", "check-truncation") and cfg.arity > DEFAULT_ARITY_BUDGET:
        from .hodge_geom import ArityBudgetExceeded
        raise ArityBudgetExceeded(f"arity {cfg.arity} exceeds the budget {DEFAULT_ARITY_BUDGET}")
    if cfg.subcommand == "layers" and not 1 <= cfg.level <= cfg.arity:
        raise ValueError("need 1 <= --level <= --arity")
    if cfg.subcommand == "check-layers" and not 1 <= cfg.level <= 3:
        raise ValueError("--max-level must be between 1 and 3")


def _apply_memory_budget() -> None:
    mb = os.environ.get("HODGEHH_BUDGET_MB")
    if not mb:
        return
    import resource

    limit = int(mb) * 1024 * 1024
    resource.setrlimit(resource.RLIMIT_AS, (limit, limit))


def run(cfg: JobConfig) -> tuple[int, dict | None]:
    """Run one job; returns (exit status, report payload or diagnostic)."""
    from .eulerian import EulerianError
    from .hodge_geom import ArityBudgetExceeded
    from .loday import BudgetExceeded

    try:
        return EXIT_OK, COMMANDS[cfg.subcommand](cfg)
    except CheckFailed as e:
        return EXIT_CHECK, e.payload
    except (BudgetExceeded, ArityBudgetExceeded, MemoryError) as e:
        return EXIT_BUDGET, {"error": "budget", "message": str(e) or type(e).__name__}
    except EulerianError as e:
        status = EXIT_BUDGET if "budget" in str(e) else EXIT_INVALID
        return status, {"error": "budget" if status == EXIT_BUDGET else "invalid", "message": str(e)}
    except (ValueError, KeyError, OSError) as e:
        return EXIT_INVALID, {"error": "invalid", "message": str(e)}


def emit(cfg: JobConfig, payload: dict) -> None:
    text = reports.to_csv(payload) if cfg.fmt == "csv" else reports.dumps(payload)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as e:
        print(json.dumps({"error": "invalid", "message": str(e)}), file=sys.stderr)
        return EXIT_INVALID
    except RuntimeError as e:
        print(json.dumps({"error": "budget", "message": str(e)}), file=sys.stderr)
        return EXIT_BUDGET
    _apply_memory_budget()
    status, payload = run(cfg)
    if status in (EXIT_OK, EXIT_CHECK):
        emit(cfg, payload)
    if status != EXIT_OK:
        diag = payload if status != EXIT_CHECK else {"error": "check failed", "check": cfg.subcommand}
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
