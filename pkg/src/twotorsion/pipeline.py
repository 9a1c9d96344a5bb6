"""End-to-end run: build, color, refine, take the pattern complex, certify."""
from __future__ import annotations

from dataclasses import dataclass

from .coloring import (
    RefineConfig,
    block_coloring,
    is_proper,
    pattern_complex,
    patterns_distinct,
    refine,
)
from .complex import SimplicialComplex
from .construction import TwoGroup, check_bounds, realize_group
from .homology import homology, torsion_signature


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineResult:
    d: int
    group: TwoGroup
    seed: int
    sections: list
    initial: SimplicialComplex
    coloring: object
    refined: object
    quotient: SimplicialComplex
    certified: bool


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    return str(v)


def render_report(sections) -> str:
    """``# section`` headers followed by ``key: value`` lines."""
    out = []
    for name, items in sections:
        out.append(f"# {name}")
        out.extend(f"{k}: {format_value(v)}" for k, v in items)
    return "\n".join(out) + "\n"


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except Exception as exc:  # noqa: BLE001 - re-raised with the stage tag
        raise PipelineError(name, exc) from exc


def run_pipeline(d: int, G: TwoGroup, seed: int = 0, max_resamples: int = 100_000,
                 strategy: str = "resample-local") -> PipelineResult:
    expected = torsion_signature(G.invariant_factors())
    R = _stage("build", realize_group, d, G)
    X = R.complex
    bounds = _stage("build", check_bounds, X, d, G)
    h_initial = _stage("certify-initial", homology, X, [d - 1])

    c = _stage("color", block_coloring, R)
    proper = is_proper(X, c)
    intersecting = patterns_distinct(X, c, d - 1, "intersecting-only")

    cfg = RefineConfig(seed=seed, max_resamples=max_resamples, strategy=strategy)
    res = _stage("refine", refine, X, c, None, cfg)
    c2 = res.coloring
    all_pairs = patterns_distinct(X, c2, d - 1, "all-pairs")
    refined_proper = is_proper(X, c2)

    Y = _stage("quotient", pattern_complex, X, c2)
    h_quot = _stage("certify-quotient", homology, Y, [d - 1])
    t_init, t_quot = h_initial.torsion[d - 1], h_quot.torsion[d - 1]
    certified = t_init == expected and t_quot == expected

    sections = [
        ("input", [
            ("d", d),
            ("group", str(G)),
            ("exponents", G.exponents),
            ("invariant_factors", G.invariant_factors()),
            ("seed", seed),
            ("strategy", strategy),
            ("max_resamples", max_resamples),
        ]),
        ("initial", [
            ("vertices", X.num_vertices),
            ("f_vector", X.f_vector()),
            ("vertex_bound", bounds.vertex_bound),
            ("vertex_bound_ok", bounds.vertices_ok),
            ("delta_0_dm1", bounds.delta),
            ("delta_bound", bounds.delta_bound),
            ("delta_bound_ok", bounds.delta_ok),
            ("torsion", t_init),
        ]),
        ("block_coloring", [
            ("colors", len(c.palette)),
            ("color_bound", 3 * (d + 1)),
            ("color_bound_ok", len(c.palette) <= 3 * (d + 1)),
            ("proper", proper),
            ("intersecting_patterns_distinct", intersecting),
        ]),
        ("refine", [
            ("L", res.L),
            ("n", res.n),
            ("second_palette", res.q),
            ("bad_event_pairs", res.events),
            ("resamples", res.resamples),
            ("palette", len(c2.palette)),
            ("palette_bound", res.palette_bound),
            ("palette_bound_ok", len(c2.palette) <= res.palette_bound),
            ("proper", refined_proper),
            ("all_patterns_distinct", all_pairs),
        ]),
        ("quotient", [
            ("vertices", Y.num_vertices),
            ("f_vector", Y.f_vector()),
            ("vertices_equal_palette", Y.num_vertices == len(c2.palette)),
            ("torsion", t_quot),
        ]),
        ("certificate", [
            ("expected_torsion", expected),
            ("initial_matches", t_init == expected),
            ("quotient_matches", t_quot == expected),
            ("certified", certified),
        ]),
        ("asymptotic", [
            ("target_vertices_25d", 25 * d),
            ("final_vertices", Y.num_vertices),
            ("within_25d", Y.num_vertices <= 25 * d),
            ("note", "25d applies only for large d; reported, not enforced"),
        ]),
    ]
    return PipelineResult(d, G, seed, sections, X, c, res, Y, certified)
