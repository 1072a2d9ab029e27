"""Cross-validation campaigns over generated diagonalizable actions.

Each instance is checked four ways:

* ``cst``: generated by pseudo-reflections iff the kernel monoid is free;
* ``gcd``: some coordinate gcd exceeds 1 iff there is a pseudo-reflection;
* ``residual``: the residual action has no pseudo-reflections;
* ``torsor``: for pseudo-reflection-free actions, smooth strata have
  trivial stabilizers.
"""

import random
from dataclasses import asdict, dataclass
from itertools import combinations_with_replacement
from multiprocessing import Pool

from .abelian import abelian_groups_up_to, subgroup_generated
from .diag import GradedAction, assert_no_residual_pseudo_reflections, pseudo_reflections
from .errors import LimitError, TheoremViolation
from .monoid import KernelMonoid, coordinate_gcds, is_free, verify_torsor_theorem

CHECKS = ("cst", "gcd", "residual", "torsor")


@dataclass(frozen=True)
class SweepConfig:
    max_order: int = 16
    dim: int = 3
    exhaustive: bool = False
    count: int = 500
    seed: int = 0
    jobs: int = 1


def exhaustive_instances(max_order, dim):
    """Every faithful action with |A| <= max_order and n <= dim, weights
    taken up to coordinate permutation."""
    for A in abelian_groups_up_to(max_order):
        elements = A.elements()
        for n in range(1, dim + 1):
            for ws in combinations_with_replacement(elements, n):
                if subgroup_generated(A, ws).is_full:
                    yield A.invariant_factors, ws


def random_instances(max_order, dim, count, seed):
    """``count`` faithful actions in exactly ``dim`` coordinates.

    Non-faithful draws are rejected and redrawn, so the stream depends on
    the seed alone.
    """
    rng = random.Random(seed)
    types = [A for A in abelian_groups_up_to(max_order) if A.rank <= dim]
    produced = 0
    while produced < count:
        A = rng.choice(types)
        ws = tuple(tuple(rng.randrange(d) for d in A.invariant_factors) for _ in range(dim))
        if subgroup_generated(A, ws).is_full:
            produced += 1
            yield A.invariant_factors, ws


def check_instance(item):
    factors, weights = item
    act = GradedAction.from_lists(factors, weights)
    out = {"group": list(factors), "weights": [list(w) for w in weights], "failed": [], "limit": None}
    try:
        prs = pseudo_reflections(act)
        P = KernelMonoid(act)
        free = is_free(P)
        generated = prs.generated_kernel.is_trivial
        if generated != free:
            out["failed"].append("cst")
        if any(g > 1 for g in coordinate_gcds(P)) != bool(len(prs)):
            out["failed"].append("gcd")
        try:
            if not assert_no_residual_pseudo_reflections(act):
                out["failed"].append("residual")
        except TheoremViolation:
            out["failed"].append("residual")
        if not len(prs) and not verify_torsor_theorem(act).passed:
            out["failed"].append("torsor")
        out["pr_free"] = not len(prs)
    except LimitError as exc:
        out["limit"] = str(exc)
    return out


def run_sweep(config):
    if config.exhaustive:
        items = exhaustive_instances(config.max_order, config.dim)
    else:
        items = random_instances(config.max_order, config.dim, config.count, config.seed)
    if config.jobs > 1:
        with Pool(config.jobs) as pool:
            results = list(pool.imap(check_instance, items, chunksize=64))
    else:
        results = [check_instance(item) for item in items]
    return summarize(config, results)


def summarize(config, results):
    counts = {c: {"agree": 0, "disagree": 0} for c in CHECKS}
    discrepancies = []
    limit_errors = []
    for i, r in enumerate(results):
        if r["limit"] is not None:
            limit_errors.append({"index": i, "group": r["group"], "weights": r["weights"], "error": r["limit"]})
            continue
        for c in CHECKS:
            if c == "torsor" and not r["pr_free"]:
                continue
            counts[c]["disagree" if c in r["failed"] else "agree"] += 1
        if r["failed"]:
            discrepancies.append({"index": i, "group": r["group"], "weights": r["weights"], "checks": r["failed"]})
    cfg = asdict(config)
    cfg.pop("jobs")  # parallelism never changes the result
    if config.exhaustive:
        cfg.pop("count")
        cfg.pop("seed")
    return {
        "kind": "sweep",
        "config": cfg,
        "instances": len(results),
        "checks": counts,
        "discrepancies": discrepancies,
        "limit_errors": limit_errors,
    }
