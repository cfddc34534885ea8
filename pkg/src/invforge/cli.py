"""Command-line entry point: verify, phi, hilbert, export.

All commands are deterministic: enumeration orders are fixed everywhere,
so identical configurations produce identical reports (the elapsed_ms
field aside).  Reports carry, per verified assertion, the identity it
checks in the paper_anchor field, so a run doubles as a reproduction log
of the underlying structure theorems.

Exit codes: 0 all selected checks pass, 1 at least one check failed,
2 configuration error (bad field parameters, budget exceeded, bad flags).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import action, construct, oracle, sagbi
from .gf import DEFAULT_MAX_Q, FieldCtx, make_field
from .poly import ExactDivisionError, Poly, exact_divide

CHECK_ORDER = ("invariance", "p-relation", "sl2-relation", "phi", "parity",
               "sagbi", "hilbert")


class ConfigError(ValueError):
    pass


class RunConfig:
    """Validated field/run parameters for one CLI invocation."""

    def __init__(self, p, n, max_degree=None, fmt="text", out=None,
                 checks=CHECK_ORDER):
        self.p = p
        self.n = n
        self.fmt = fmt
        self.out = out
        self.checks = tuple(checks)
        for c in self.checks:
            if c not in CHECK_ORDER:
                raise ConfigError(f"unknown check {c!r}; valid: "
                                  f"{', '.join(CHECK_ORDER)}")
        if fmt not in ("text", "json"):
            raise ConfigError(f"unknown format {fmt!r}")
        max_q = DEFAULT_MAX_Q
        env = os.environ.get("INVFORGE_MAX_Q")
        if env:
            try:
                max_q = max(max_q, int(env))
            except ValueError:
                raise ConfigError(f"INVFORGE_MAX_Q={env!r} is not an integer")
        try:
            self.ctx = make_field(p, n, max_q=max_q)
        except (ValueError, ZeroDivisionError) as exc:
            if p == 2:
                raise ConfigError("characteristic 2 unsupported") from exc
            raise ConfigError(str(exc)) from exc
        if self.ctx.q > DEFAULT_MAX_Q:
            print(f"WARNING: q={self.ctx.q} is beyond the supported bound "
                  f"{DEFAULT_MAX_Q}; INVFORGE_MAX_Q override is unsupported "
                  f"territory", file=sys.stderr)
        budget = oracle.default_budget(self.ctx.q)
        self.max_degree = budget if max_degree is None else max_degree
        if self.max_degree > budget:
            raise ConfigError(f"max degree {self.max_degree} exceeds the "
                              f"q={self.ctx.q} budget {budget}")
        if self.max_degree < 0:
            raise ConfigError("max degree must be nonnegative")

    def describe(self):
        return {"p": self.p, "n": self.n, "q": self.ctx.q,
                "modulus": self.ctx.modulus_str(),
                "omega": self.ctx.elem_str(self.ctx.omega),
                "max_degree": self.max_degree,
                "checks": list(self.checks)}


class VerifyState:
    """Shared lazily-built objects for one verification run."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.ctx: FieldCtx = config.ctx
        self._inv = None
        self._p_genset = None
        self._sl2_genset = None
        self._hsop_genset = None
        self._phi = None

    @property
    def inv(self):
        if self._inv is None:
            self._inv = construct.build(self.ctx)
        return self._inv

    @property
    def p_genset(self):
        if self._p_genset is None:
            self._p_genset = self.inv.p_genset()
        return self._p_genset

    @property
    def sl2_genset(self):
        if self._sl2_genset is None:
            self._sl2_genset = self.inv.sl2_genset()
        return self._sl2_genset

    @property
    def hsop_genset(self):
        if self._hsop_genset is None:
            self._hsop_genset = self.inv.sl2_hsop_genset()
        return self._hsop_genset

    @property
    def phi(self):
        if self._phi is None:
            self._phi = construct.compute_phi(self.inv, self.hsop_genset)
        return self._phi


def _entry(name, anchor, ok, detail):
    return {"name": name, "paper_anchor": anchor, "pass": bool(ok),
            "detail": detail}


# ----------------------------------------------------------------------
# Individual checks
# ----------------------------------------------------------------------

def _check_invariance(state: VerifyState):
    entries = []
    try:
        action.assert_induced_displays(state.ctx)
        entries.append(_entry(
            "invariance:induced-displays",
            "sigma_c -> [[1,2c,c^2],[0,1,c],[0,0,1]], "
            "rho_w -> diag(w^2,w,1), tau -> [[0,0,1],[0,-1,0],[1,0,0]]",
            True, "all derived induced matrices match their closed forms"))
    except AssertionError as exc:
        entries.append(_entry("invariance:induced-displays",
                              "induced-action matrix displays", False,
                              str(exc)))
    p_pairs = construct.verify_p_invariance(state.inv)
    bad = [(n, g) for n, g, ok in p_pairs if not ok]
    entries.append(_entry(
        "invariance:P",
        "a0, Delta, beta, gamma_0 fixed by every sigma_c",
        not bad,
        f"{len(p_pairs)} (invariant, generator) pairs checked" if not bad
        else f"not fixed: {bad}"))
    sl2_pairs = construct.verify_sl2_invariance(state.inv)
    bad = [(n, g) for n, g, ok in sl2_pairs if not ok]
    entries.append(_entry(
        "invariance:SL2",
        "Delta, J, Gamma, B fixed by every sigma_c and by tau",
        not bad,
        f"{len(sl2_pairs)} (invariant, generator) pairs checked" if not bad
        else f"not fixed: {bad}"))
    moved = action.apply(action.tau(state.ctx), state.inv.beta) \
        != state.inv.beta
    entries.append(_entry(
        "invariance:beta-tau-negative-control",
        "beta is P-invariant but not SL2-invariant",
        moved, "tau moves beta, as expected" if moved
        else "tau unexpectedly fixes beta"))
    return entries


def _check_p_relation(state: VerifyState):
    entries = []
    inv = state.inv
    try:
        construct.verify_p_relation(inv)
        entries.append(_entry(
            "p-relation:identity",
            "beta^2 = a0^q*gamma_0 + Delta*(Delta^((q-1)/2) - a0^(q-1))^2",
            True, "residual is the zero polynomial; "
            "zeta vanishes at a1 = 0"))
    except construct.IdentityError as exc:
        entries.append(_entry("p-relation:identity", str(exc.identity),
                              False, "nonzero residual"))
    perturbed = construct.p_relation_residual(
        inv.a0, inv.beta, inv.delta, inv.gamma[1])
    entries.append(_entry(
        "p-relation:perturbed-negative-control",
        "replacing gamma_0 by gamma_1 must break the relation",
        not perturbed.is_zero(),
        "perturbed residual is nonzero, as expected"
        if not perturbed.is_zero() else
        "perturbed residual vanished; comparison is vacuous"))
    return entries


def _check_sl2_relation(state: VerifyState):
    entries = []
    inv = state.inv
    q = state.ctx.q
    diff = inv.B * inv.B - (inv.delta ** q) * inv.Gamma * inv.Gamma
    mod_a0 = diff.substitute(0, Poly.zero(state.ctx)).is_zero()
    entries.append(_entry(
        "sl2-relation:zero-mod-a0",
        "B^2 - Delta^q*Gamma^2 is zero modulo a0",
        mod_a0, "every term is divisible by a0" if mod_a0
        else "a substitution a0 = 0 left a nonzero polynomial"))
    try:
        exact_divide(diff, inv.J)
        entries.append(_entry(
            "sl2-relation:J-divides",
            "J divides B^2 - Delta^q*Gamma^2",
            True, "exact lead-term division with zero remainder"))
    except ExactDivisionError as exc:
        entries.append(_entry("sl2-relation:J-divides",
                              "J divides B^2 - Delta^q*Gamma^2", False,
                              f"remainder {exc.remainder.to_text()}"))
    return entries


def _check_phi(state: VerifyState):
    try:
        phi = state.phi
    except (construct.IdentityError, ArithmeticError) as exc:
        return [_entry("phi:relation",
                       "B^2 = Delta^q*Gamma^2 + J*Phi(Delta, J, Gamma)",
                       False, str(exc))]
    return [_entry(
        "phi:relation",
        "B^2 = Delta^q*Gamma^2 + J*Phi(Delta, J, Gamma)",
        True,
        f"Phi has {len(phi.terms)} terms; subduction remainder zero; "
        f"reconstruction exact")]


def _check_parity(state: VerifyState):
    entries = []
    inv = state.inv
    ctx = state.ctx
    q = ctx.q
    weights = [("Delta", inv.delta, 2 % (q - 1)),
               ("beta", inv.beta, 1 % (q - 1)),
               ("gamma_0", inv.gamma[0], 2 % (q - 1))]
    bad = [n for n, f, w in weights if f.isobaric_weight() != w]
    entries.append(_entry(
        "parity:isobaric-weights",
        "wt(a_i) = i makes Delta, gamma_0 isobaric of weight 2 and beta "
        "of weight 1 (mod q-1)",
        not bad, "weights as stated" if not bad else f"wrong weight: {bad}"))
    named = [("Delta", inv.delta), ("beta", inv.beta),
             ("gamma_0", inv.gamma[0]), ("Gamma", inv.Gamma),
             ("B", inv.B), ("J", inv.J)]
    bad = []
    for name, f in named:
        w = f.isobaric_weight()
        if w is None:
            bad.append((name, "not isobaric"))
            continue
        for u in ctx.units():
            if action.apply(action.rho(ctx, u), f) != f.scale(ctx.pow(u, w)):
                bad.append((name, ctx.elem_str(u)))
    entries.append(_entry(
        "parity:rho-scaling",
        "rho_w scales an isobaric invariant by w^wt, for every unit w",
        not bad,
        f"checked {len(named)} invariants x {len(ctx.units())} units"
        if not bad else f"scaling failed: {bad}"))
    if (q - 1) // 2 % 2 == 1:
        try:
            gamma_free = not state.phi.uses("Gamma")
        except (construct.IdentityError, ArithmeticError):
            gamma_free = False
        entries.append(_entry(
            "parity:phi-gamma-free",
            "Gamma cannot appear in Phi when (q-1)/2 is odd",
            gamma_free, "Phi is Gamma-free" if gamma_free
            else "Phi uses Gamma"))
    else:
        entries.append(_entry(
            "parity:phi-gamma-free",
            "no Gamma-parity constraint when (q-1)/2 is even",
            True, f"(q-1)/2 = {(q - 1) // 2} is even; nothing to check"))
    try:
        f_even, f_odd, quot = construct.parity_decompose_invariant(
            inv.B, inv)
        ok = f_even.is_zero() and f_odd == inv.B and \
            quot == Poly.constant(ctx, 1)
        detail = "B splits as (0, B) with B-quotient 1" if ok else \
            "unexpected decomposition of B"
    except (ValueError, ArithmeticError) as exc:
        ok, detail = False, str(exc)
    entries.append(_entry(
        "parity:odd-invariants-divisible-by-B",
        "every odd-weight SL2-invariant is divisible by B",
        ok, detail))
    return entries


def _check_sagbi(state: VerifyState):
    entries = []
    ctx = state.ctx
    q = ctx.q
    for label, genset, bound, expected in (
            ("P", state.p_genset, 2 * q, ((0, 0, 2, 0), (0, q, 0, 0))),
            ("SL2", state.sl2_genset, 2 * state.inv.B.degree(),
             ((q, 0, 2, 0), (0, 0, 0, 2)))):
        report = sagbi.certify_sagbi(genset, bound)
        pairs = [(e["u"], e["v"]) for e in report.entries]
        unique = len(pairs) == 1 and set(pairs[0]) == set(expected)
        entries.append(_entry(
            f"sagbi:{label}-single-tete-a-tete",
            "exactly one non-trivial tete-a-tete "
            + ("beta^2 vs Delta^q" if label == "P"
               else "B^2 vs Delta^q*Gamma^2"),
            unique,
            f"found {pairs} up to degree {bound}"))
        entries.append(_entry(
            f"sagbi:{label}-certified",
            ("{a0, Delta, beta, gamma_0} is a SAGBI basis"
             if label == "P" else "{Delta, J, Gamma, B} is a SAGBI basis"),
            report.certified,
            f"all witnesses subduct to zero (certified up to degree "
            f"{bound})" if report.certified else report.to_text()))
    adversarial = sagbi.GenSet(
        ("Delta", "Delta+a0^2"),
        (state.inv.delta, state.inv.delta + state.inv.a0 * state.inv.a0))
    report = sagbi.certify_sagbi(adversarial, 4)
    entries.append(_entry(
        "sagbi:adversarial-negative-control",
        "a non-SAGBI set must fail certification",
        not report.certified,
        "certification fails, as expected" if not report.certified
        else "adversarial set unexpectedly certified"))
    return entries


def _check_hilbert(state: VerifyState):
    entries = []
    ctx = state.ctx
    q = ctx.q
    for tag in ("P", "SL2"):
        table = oracle.compare(ctx, tag, state.config.max_degree)
        entries.append(_entry(
            f"hilbert:{tag}",
            ("observed dimensions match (1+t^q)/((1-t)(1-t^2)(1-t^q))"
             if tag == "P" else
             "observed dimensions match (1+t^e)/((1-t^2)(1-t^(q+1))"
             "(1-t^(q(q-1)/2))), e = deg B"),
            table.passed,
            f"degrees 0..{table.max_degree} agree pointwise"
            if table.passed else table.to_text()))
    degs = 2 * (q + 1) * (q * (q - 1) // 2)
    order = q * (q * q - 1)
    entries.append(_entry(
        "hilbert:hsop-degree-product",
        "deg Delta * deg J * deg Gamma = q(q-1)(q+1) = |SL2(F_q)|",
        degs == order, f"{degs} = {order}"))
    return entries


_CHECK_FUNCS = {
    "invariance": _check_invariance,
    "p-relation": _check_p_relation,
    "sl2-relation": _check_sl2_relation,
    "phi": _check_phi,
    "parity": _check_parity,
    "sagbi": _check_sagbi,
    "hilbert": _check_hilbert,
}


def run_checks(config: RunConfig):
    state = VerifyState(config)
    start = time.monotonic()
    entries = []
    for name in CHECK_ORDER:
        if name in config.checks:
            entries.extend(_CHECK_FUNCS[name](state))
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return {"config": config.describe(), "checks": entries,
            "elapsed_ms": elapsed_ms}


def report_to_text(report) -> str:
    cfg = report["config"]
    lines = [f"invforge verify: q = {cfg['q']} (p = {cfg['p']}, "
             f"n = {cfg['n']}, modulus {cfg['modulus']}, "
             f"omega = {cfg['omega']})"]
    for e in report["checks"]:
        status = "PASS" if e["pass"] else "FAIL"
        lines.append(f"{status}  {e['name']}")
        lines.append(f"      checks: {e['paper_anchor']}")
        lines.append(f"      detail: {e['detail']}")
    n_bad = sum(1 for e in report["checks"] if not e["pass"])
    lines.append(f"{len(report['checks']) - n_bad}/{len(report['checks'])} "
                 f"assertions passed in {report['elapsed_ms']} ms")
    return "\n".join(lines)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _outdir(config: RunConfig) -> Path | None:
    if config.out is None:
        return None
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_verify(config: RunConfig) -> int:
    report = run_checks(config)
    text = json.dumps(report, indent=2) if config.fmt == "json" \
        else report_to_text(report)
    print(text)
    out = _outdir(config)
    if out is not None:
        suffix = "json" if config.fmt == "json" else "txt"
        (out / f"report.{suffix}").write_text(text + "\n", encoding="utf-8")
    return 0 if all(e["pass"] for e in report["checks"]) else 1


def cmd_phi(config: RunConfig) -> int:
    state = VerifyState(config)
    phi = state.phi
    text = json.dumps(phi.to_json(), indent=2) if config.fmt == "json" \
        else phi.to_text()
    print(text)
    out = _outdir(config)
    if out is not None:
        suffix = "json" if config.fmt == "json" else "txt"
        (out / f"phi.{suffix}").write_text(text + "\n", encoding="utf-8")
    return 0


def render_hilbert_figure(tables, path):
    """Observed-vs-predicted dimension curves rendered to an image file."""
    from matplotlib.figure import Figure

    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.add_subplot(111)
    colors = ("tab:blue", "tab:orange")
    for table, color in zip(tables, colors):
        degrees = list(range(table.max_degree + 1))
        ax.plot(degrees, table.predicted, "-", color=color,
                label=f"{table.group_tag} predicted")
        ax.plot(degrees, table.observed, "o", color=color, mfc="none",
                label=f"{table.group_tag} observed")
    ax.set_xlabel("degree")
    ax.set_ylabel("invariant dimension")
    ax.set_title("invariant dimensions: oracle vs hypersurface series")
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")


def cmd_hilbert(config: RunConfig) -> int:
    tables = [oracle.compare(config.ctx, tag, config.max_degree)
              for tag in ("P", "SL2")]
    if config.fmt == "json":
        print(json.dumps([t.to_json() for t in tables], indent=2))
    else:
        print("\n\n".join(t.to_text() for t in tables))
    out = _outdir(config)
    if out is not None:
        for t in tables:
            (out / f"hilbert_{t.group_tag}.csv").write_text(
                t.to_csv(), encoding="utf-8")
            if config.fmt == "json":
                (out / f"hilbert_{t.group_tag}.json").write_text(
                    json.dumps(t.to_json(), indent=2) + "\n",
                    encoding="utf-8")
            else:
                (out / f"hilbert_{t.group_tag}.txt").write_text(
                    t.to_text() + "\n", encoding="utf-8")
        render_hilbert_figure(tables, out / "hilbert.png")
    return 0 if all(t.passed for t in tables) else 1


def cmd_export(config: RunConfig) -> int:
    state = VerifyState(config)
    inv = state.inv
    out = _outdir(config) or Path(f"invforge_q{config.ctx.q}")
    out.mkdir(parents=True, exist_ok=True)
    named = [("Delta", inv.delta), ("beta", inv.beta),
             ("gamma0", inv.gamma[0]), ("Gamma", inv.Gamma),
             ("B", inv.B), ("J", inv.J)]
    for name, f in named:
        if config.fmt == "json":
            payload = {"invariant": name, "q": config.ctx.q,
                       "degree": f.degree(), "terms": f.to_json_terms()}
            (out / f"{name}.json").write_text(
                json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        else:
            (out / f"{name}.txt").write_text(f.to_text() + "\n",
                                             encoding="utf-8")
    phi = state.phi
    if config.fmt == "json":
        (out / "Phi.json").write_text(
            json.dumps(phi.to_json(), indent=2) + "\n", encoding="utf-8")
    else:
        (out / "Phi.txt").write_text(phi.to_text() + "\n", encoding="utf-8")
    print(f"wrote {len(named) + 1} invariant files to {out}")
    return 0


# ----------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="invforge",
        description="construct and verify the quadratic-form invariants "
                    "of SL2(F_q) and its Sylow p-subgroup")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("verify", "run the selected verification checks"),
            ("phi", "compute and print Phi(Delta, J, Gamma)"),
            ("hilbert", "oracle dimensions vs hypersurface predictions"),
            ("export", "write every named invariant to files")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--p", type=int, required=True, help="odd prime")
        p.add_argument("--n", type=int, default=1, help="extension degree")
        p.add_argument("--max-degree", type=int, default=None,
                       help="oracle degree budget")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="directory for output files")
        if name == "verify":
            p.add_argument("--checks", default=",".join(CHECK_ORDER),
                           help="comma-separated subset of: "
                           + ", ".join(CHECK_ORDER))
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    checks = CHECK_ORDER
    if getattr(args, "checks", None):
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    try:
        config = RunConfig(args.p, args.n, max_degree=args.max_degree,
                           fmt=args.format, out=args.out, checks=checks)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "phi":
            return cmd_phi(config)
        if args.command == "hilbert":
            return cmd_hilbert(config)
        if args.command == "export":
            return cmd_export(config)
    except oracle.BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
