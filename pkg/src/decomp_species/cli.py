"""Command-line front end.

    decomp-species run --species bipartite --variant union --checks d1,exp-formula --cap 3,3
    decomp-species series --species binary --cap 3 --refined

Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error,
3 structure budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import checks
from .checks import CheckReport
from .egf import factorial_weight
from .poly import format_poly
from .species import BudgetExceeded, SpeciesBundle, engine_for, species_egf
from .zoo.binary import binary_function_species
from .zoo.bipartite import VARIANTS as BIPARTITE_VARIANTS
from .zoo.bipartite import WEIGHTS, bipartite_species, verify_bipartite_closed_forms
from .zoo.magic import VARIANTS as MAGIC_VARIANTS
from .zoo.magic import magic_species, verify_magic_relations
from .zoo.sets import check_psi, identity_iso, swap_iso, twist, two_point_species

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3

SPECIES = ("bipartite", "binary", "magic", "twist")
TWIST_VARIANTS = ("swap", "identity")
DEFAULT_CAPS = {"bipartite": (3, 3), "binary": (6,), "magic": (3, 3), "twist": (6,)}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    species_id: str
    variant: Optional[str] = None
    s: int = 2
    cap: Tuple[int, ...] = ()
    checks: List[str] = field(default_factory=list)
    output: str = "table"
    budget: Optional[int] = None
    seed: int = 0
    weight: Optional[str] = None
    max_m: int = 4
    timings: bool = False


def build_species(cfg: RunConfig) -> SpeciesBundle:
    sid, variant = cfg.species_id, cfg.variant
    if sid == "bipartite":
        variant = variant or "union"
        if variant not in BIPARTITE_VARIANTS:
            raise ConfigError(f"bipartite variant must be one of {', '.join(BIPARTITE_VARIANTS)}")
        if cfg.weight is not None and cfg.weight not in WEIGHTS:
            raise ConfigError(f"weight must be one of {', '.join(sorted(WEIGHTS))}")
        return bipartite_species(variant, cfg.weight)
    if cfg.weight is not None:
        raise ConfigError("--weight applies to the bipartite species only")
    if sid == "binary":
        if variant not in (None, "flip"):
            raise ConfigError("binary species has the single variant 'flip'")
        return binary_function_species()
    if sid == "magic":
        variant = variant or "all"
        if variant not in MAGIC_VARIANTS:
            raise ConfigError(f"magic variant must be one of {', '.join(MAGIC_VARIANTS)}")
        if cfg.s < 1:
            raise ConfigError("--s must be positive")
        return magic_species(cfg.s, variant)
    if sid == "twist":
        variant = variant or "swap"
        if variant not in TWIST_VARIANTS:
            raise ConfigError(f"twist variant must be one of {', '.join(TWIST_VARIANTS)}")
        G = two_point_species()
        return twist(G, swap_iso(G) if variant == "swap" else identity_iso(G), seed=cfg.seed)
    raise ConfigError(f"unknown species {sid!r}; known: {', '.join(SPECIES)}")


def _closed_forms(S: SpeciesBundle, cfg: RunConfig) -> CheckReport:
    if cfg.species_id == "bipartite":
        return verify_bipartite_closed_forms(S, cfg.cap, cfg.budget)
    # two-sort caps use the first entry; one-sort objects go one size further
    n = cfg.cap[0]
    sym = n if S.arity == 1 else n + 1
    if S.arity == 1:
        n = max(n - 1, 0)
    return verify_magic_relations(n, sym, s_values=(cfg.s,), budget=cfg.budget, closed_forms=cfg.s == 2)


CheckFn = Callable[[SpeciesBundle, RunConfig], CheckReport]

CHECKS: Dict[str, CheckFn] = {
    "inject": lambda S, c: checks.check_injective(S, c.cap),
    "natural": lambda S, c: checks.check_naturality(S, c.cap, c.seed),
    "d1": lambda S, c: checks.check_d1(S, c.cap),
    "partition": lambda S, c: checks.check_partition_properties(S, c.cap),
    "permute": lambda S, c: checks.check_permutability(S, c.cap, c.max_m),
    "basepoint": lambda S, c: checks.check_base_point(S, c.cap),
    "functorial": lambda S, c: checks.check_functoriality(S, c.cap, c.seed),
    "weights": lambda S, c: checks.check_weight(S, c.cap, c.seed),
    "w0": lambda S, c: checks.check_weight(S, c.cap, c.seed, axioms=("W0",)),
    "w1": lambda S, c: checks.check_weight(S, c.cap, c.seed, axioms=("W1",)),
    "w2": lambda S, c: checks.check_weight(S, c.cap, c.seed, axioms=("W2",)),
    "exp-formula": lambda S, c: checks.verify_exponential_formula(S, c.cap, c.budget),
    "refined-formula": lambda S, c: checks.verify_refined_formula(S, c.cap, c.budget),
    "pointwise": lambda S, c: checks.check_pointwise(S, c.cap),
    "closed-forms": _closed_forms,
    "psi": lambda S, c: check_psi(S, c.cap, c.seed),
}

AXIOM_SUITE = ("inject", "natural", "d1", "partition", "permute", "basepoint", "functorial")


def resolve_species(cfg: RunConfig) -> SpeciesBundle:
    """Build the bundle and normalise the cap to its arity."""
    S = build_species(cfg)
    if not cfg.cap:
        cfg.cap = DEFAULT_CAPS[cfg.species_id]
    elif len(cfg.cap) == 1 and S.arity > 1:
        cfg.cap = cfg.cap * S.arity
    if len(cfg.cap) != S.arity:
        raise ConfigError(f"cap {list(cfg.cap)} does not match species arity {S.arity}")
    if any(c < 0 for c in cfg.cap):
        raise ConfigError("cap entries must be non-negative")
    return S


def validate_config(cfg: RunConfig) -> SpeciesBundle:
    unknown = [c for c in cfg.checks if c not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    if not cfg.checks:
        raise ConfigError("no checks requested")
    S = resolve_species(cfg)
    if "closed-forms" in cfg.checks and cfg.species_id not in ("bipartite", "magic"):
        raise ConfigError("closed-forms applies to the bipartite and magic species only")
    if cfg.max_m < 2:
        raise ConfigError("--max-m must be at least 2")
    return S


def run(cfg: RunConfig) -> Tuple[int, List[CheckReport], Optional[str]]:
    """Run the configured checks in order; returns (exit code, reports, error)."""
    try:
        S = validate_config(cfg)
    except (ConfigError, ValueError) as exc:
        return EXIT_CONFIG, [], str(exc)
    engine_for(S, cfg.budget)
    reports = []
    try:
        for name in cfg.checks:
            rep = CHECKS[name](S, cfg)
            rep.name = name
            reports.append(rep)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, reports, str(exc)
    code = EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    return code, reports, None


def render_table(cfg: RunConfig, reports: Sequence[CheckReport]) -> str:
    lines = [f"species={cfg.species_id} variant={cfg.variant or '-'} cap={','.join(map(str, cfg.cap))} seed={cfg.seed}"]
    for r in reports:
        lines.append(f"{r.verdict.upper():4}  {r.name:16} cases={r.cases_checked}")
        if r.witness is not None:
            lines.append("      witness: " + json.dumps(r.witness, sort_keys=True))
    return "\n".join(lines)


def render_json(cfg: RunConfig, reports: Sequence[CheckReport], error: Optional[str] = None) -> str:
    doc = {"config": asdict(cfg), "reports": [r.to_dict(timings=cfg.timings) for r in reports]}
    doc["config"]["cap"] = list(cfg.cap)
    if error:
        doc["error"] = error
    return json.dumps(doc, indent=2, sort_keys=True)


def emit_series(cfg: RunConfig, refined: bool) -> str:
    """Weighted counts (coefficient times the factorials) per multi-index."""
    S = resolve_species(cfg)
    series = species_egf(S, cfg.cap, refined=refined, budget=cfg.budget)
    lines = ["index\tweighted_count"]
    for idx in series.indices():
        count = series[idx] * factorial_weight(idx)
        lines.append(f"{','.join(map(str, idx))}\t{format_poly(count)}")
    return "\n".join(lines)


def _cap(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"cap must be a comma list of integers, got {text!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--species", required=True, help=f"one of {', '.join(SPECIES)}")
    p.add_argument("--variant", help="species variant (e.g. union/completion, all/barred/symmetric/barred_symmetric)")
    p.add_argument("--s", type=int, default=2, help="row/column sum for magic squares (default 2)")
    p.add_argument("--cap", type=_cap, default=(), help="comma list of per-sort size caps; one value is broadcast")
    p.add_argument("--budget", type=int, help="maximum number of structures to enumerate")
    p.add_argument("--weight", help="bipartite weight override: edges or complement")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled relabellings (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="decomp-species", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run axiom checks and identity verifications")
    _add_common(p_run)
    p_run.add_argument("--checks", default=",".join(AXIOM_SUITE),
                       help=f"comma list from: {', '.join(CHECKS)} (default: the axiom suite)")
    p_run.add_argument("--max-m", type=int, default=4, help="largest number of parts for permutability")
    p_run.add_argument("--timings", action="store_true", help="report elapsed times (makes output nondeterministic)")
    p_ser = sub.add_parser("series", help="print weighted structure counts per multi-index")
    _add_common(p_ser)
    p_ser.add_argument("--refined", action="store_true", help="mark component counts with y")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        species_id=args.species,
        variant=args.variant,
        s=args.s,
        cap=args.cap,
        checks=[c.strip() for c in getattr(args, "checks", "").split(",") if c.strip()],
        output="json" if args.json else "table",
        budget=args.budget,
        seed=args.seed,
        weight=args.weight,
        max_m=getattr(args, "max_m", 4),
        timings=getattr(args, "timings", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    if args.command == "series":
        try:
            text = emit_series(cfg, args.refined)
        except (ConfigError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        print(text)
        return EXIT_PASS

    t0 = time.perf_counter()
    code, reports, error = run(cfg)
    if cfg.output == "json":
        print(render_json(cfg, reports, error))
    else:
        if reports:
            print(render_table(cfg, reports))
    if error:
        print(f"error: {error}", file=sys.stderr)
    if cfg.timings:
        for r in reports:
            print(f"{r.name}: {r.elapsed_ms:.1f} ms", file=sys.stderr)
        print(f"total: {(time.perf_counter() - t0) * 1000:.1f} ms", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
