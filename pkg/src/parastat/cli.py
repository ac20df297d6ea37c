"""Batch command-line interface.

Subcommands:

  classify   enumerate bicharacters / commutation factors of a small group,
             with exact R-matrices and quasitriangularity flags
  verify     build a representation and check the defining relations
  fock       export matrix elements and basis manifests (ladder manifest for
             the relative parabose set)
  jc         assemble a generalized Jaynes-Cummings Hamiltonian, export its
             spectrum and quench dynamics

Exit codes: 0 success, 1 invariant failure, 2 argument/parameter error,
3 resource/sizing error.  Flag values override config-file entries, which
override defaults; outputs are byte-identical across repeated runs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .algebras import AlgebraKind, DegreeAssignment, verify_relations
from .errors import ArgumentError, HermiticityError, ParastatError, SizingError
from .fock import (
    build_copy,
    build_green_rep,
    default_theta,
    fock_submodule,
    single_mode_reference,
)
from .groups import (
    Bicharacter,
    FiniteAbelianGroup,
    bicharacter_to_rmatrix,
    check_quasitriangular,
    enumerate_bicharacters,
    is_commutation_factor,
)
from .jc import (
    HamiltonianKind,
    JCParams,
    basis_state,
    build_hamiltonian,
    evolve,
    free_hamiltonian,
    interaction_hamiltonian,
    selection_rule_check,
    total_excitation_operator,
)
from .pbf import (
    braided_product_rep,
    build_pbf_rep,
    factor_search,
    klein_group_degrees,
    subspace_dims,
)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_ARGUMENT = 2
EXIT_SIZING = 3

GREEN = (AlgebraKind.PB, AlgebraKind.PF, AlgebraKind.PBF, AlgebraKind.PFB)


def _parse_complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", ""))
    except ValueError:
        raise ArgumentError(f"cannot parse complex number {s!r} (use e.g. '0.25' or '1+2j')")


# (flag, dest, converter, default, help); converters run on config values too
_COMMON = [
    ("--out", "out", str, None, "output directory (required)"),
    ("--format", "format", str, "json", "output format for classify: json or csv"),
    ("--tol", "tol", float, 1e-10, "verification tolerance"),
    ("--config", "config", str, None, "flat key=value config file"),
]

_OPTIONS = {
    "classify": [("--group", "group", str, None, 'group descriptor, e.g. "Z2xZ2"')] + _COMMON,
    "verify": [
        ("--kind", "kind", str, None, "algebra kind (CCR, CAR, Ws, Was, PB, PF, PBF, PFB, SCR, SAR)"),
        ("--p", "p", int, 1, "representation order"),
        ("--modes-b", "modes_b", int, None, "boson-like modes"),
        ("--modes-f", "modes_f", int, None, "fermion-like modes"),
        ("--cutoff", "cutoff", int, 6, "boson cutoff"),
        ("--theta", "theta", str, "default", 'commutation factor: "default", "search", "trivial", or exponent rows like "1,1;1,0"'),
    ] + _COMMON,
    "fock": [
        ("--kind", "kind", str, None, "PB, PF, PBF or PFB"),
        ("--p", "p", int, 1, "representation order"),
        ("--modes-b", "modes_b", int, None, "boson-like modes"),
        ("--modes-f", "modes_f", int, None, "fermion-like modes"),
        ("--cutoff", "cutoff", int, 6, "boson cutoff"),
        ("--theta", "theta", str, "default", "commutation factor selector"),
    ] + _COMMON,
    "jc": [
        ("--p", "p", int, 1, "representation order"),
        ("--cutoff", "cutoff", int, 6, "boson cutoff"),
        ("--omega-b", "omega_b", float, 1.0, "paraboson quantum energy"),
        ("--omega-f", "omega_f", float, 1.0, "level gap energy"),
        ("--lambda", "lam", _parse_complex, None, "real coupling for --hamiltonian dyn"),
        ("--lambda1", "lam1", _parse_complex, None, "complex coupling for dynstar"),
        ("--lambda2", "lam2", _parse_complex, None, "complex coupling for dynstar"),
        ("--hamiltonian", "hamiltonian", str, "dyn", "dyn, dynstar or free"),
        ("--t-max", "t_max", float, 10.0, "quench end time"),
        ("--t-steps", "t_steps", int, 200, "number of time points after t=0"),
        ("--init", "init", str, "0,0,0", 'initial state "m,n,branch" or "@vectorfile"'),
        ("--theta", "theta", str, "search", "commutation factor selector"),
    ] + _COMMON,
}


def _load_config(path: str) -> dict:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ArgumentError(f"config line without '=': {line!r}")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


def _resolve(ns: argparse.Namespace, options) -> dict:
    cfg = _load_config(ns.config) if getattr(ns, "config", None) else {}
    known = {flag.lstrip("-").replace("-", "_") for flag, *_ in options}
    unknown = set(cfg) - known
    if unknown:
        raise ArgumentError(f"unknown config keys: {', '.join(sorted(unknown))}")
    resolved = {}
    for flag, dest, conv, default, _h in options:
        key = flag.lstrip("-").replace("-", "_")
        val = getattr(ns, dest, None)
        if val is None and key in cfg:
            val = conv(cfg[key])
        if val is None:
            val = default
        resolved[dest] = val
    return resolved


def _outdir(cfg) -> Path:
    if not cfg.get("out"):
        raise ArgumentError("--out is required")
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _parse_theta_matrix(spec: str, group: FiniteAbelianGroup) -> Bicharacter:
    try:
        rows = [[int(x) for x in row.split(",")] for row in spec.split(";")]
    except ValueError:
        raise ArgumentError(f"cannot parse exponent matrix {spec!r}")
    if len(rows) != group.rank or any(len(r) != group.rank for r in rows):
        raise ArgumentError(f"exponent matrix {spec!r} is not {group.rank}x{group.rank}")
    return Bicharacter(group, rows)


def _resolve_theta(kind: AlgebraKind, spec: str, p: int, cutoff: int, tol: float):
    """Return (theta, degree assignment, description) for a Green-ansatz kind."""
    if kind in (AlgebraKind.PB, AlgebraKind.PF):
        _, deg = default_theta(kind)
        group = deg.group
        if spec == "default":
            return default_theta(kind) + ("default",)
        if spec == "trivial":
            return Bicharacter.trivial(group), deg, "trivial"
        if spec == "search":
            raise ArgumentError("the factor search applies to PBF/PFB only")
        return _parse_theta_matrix(spec, group), deg, "explicit"
    deg = klein_group_degrees()
    group = deg.group
    if spec in ("default", "search"):
        found = factor_search(p, max(cutoff, 4), tol=max(tol, 1e-10))
        if not found:
            raise ArgumentError(f"no commutation factor closes the algebra at p={p}")
        return found[0].theta, deg, "search"
    if spec == "trivial":
        return Bicharacter.trivial(group), deg, "trivial"
    return _parse_theta_matrix(spec, group), deg, "explicit"


def _theta_payload(theta: Bicharacter) -> dict:
    return {
        "group": str(theta.group),
        "gen_exponents": [list(r) for r in theta.gen_matrix],
        "gen_orders": [
            [int(np.gcd(di, dj)) for dj in theta.group.factors] for di in theta.group.factors
        ],
    }


def cmd_classify(cfg) -> int:
    group = FiniteAbelianGroup.parse(cfg["group"]) if cfg["group"] else None
    if group is None:
        raise ArgumentError("--group is required")
    out = _outdir(cfg)
    bichars = enumerate_bicharacters(group)
    entries = []
    factor_entries = []
    for i, b in enumerate(bichars):
        skew = is_commutation_factor(b)
        entries.append(
            {"index": i, "gen_exponents": [list(r) for r in b.gen_matrix], "commutation_factor": skew}
        )
        if skew:
            r = bicharacter_to_rmatrix(b)
            qt = check_quasitriangular(r, group)
            coeffs = []
            for (g, h), v in sorted(r.coefficients.items()):
                q, e = v.as_scaled_root()
                val = v.to_complex()
                coeffs.append(
                    {
                        "g": list(g),
                        "h": list(h),
                        "scale": f"{q.numerator}/{q.denominator}",
                        "zeta_power": e,
                        "re": float(val.real),
                        "im": float(val.imag),
                    }
                )
            factor_entries.append(
                {
                    "index": i,
                    "gen_exponents": [list(r_) for r_ in b.gen_matrix],
                    "r_matrix": coeffs,
                    "qt_axioms_ok": qt.qt_axioms_ok,
                    "triangular": qt.triangular,
                }
            )
    report = {
        "group": str(group),
        "order": group.order,
        "bicharacter_count": len(bichars),
        "commutation_factor_count": len(factor_entries),
        "bicharacters": entries,
        "commutation_factors": factor_entries,
    }
    if cfg["format"] == "csv":
        rows = []
        flags = {e["index"]: e for e in factor_entries}
        for e in entries:
            f = flags.get(e["index"])
            rows.append(
                (
                    e["index"],
                    ";".join(",".join(str(x) for x in r) for r in e["gen_exponents"]),
                    int(e["commutation_factor"]),
                    int(f["qt_axioms_ok"]) if f else "",
                    int(f["triangular"]) if f else "",
                )
            )
        io.write_csv(
            out / "classification.csv",
            ("index", "gen_exponents", "commutation_factor", "qt_axioms_ok", "triangular"),
            rows,
        )
    else:
        io.write_json(out / "classification.json", report)
    return EXIT_OK


def _build_for_verify(kind: AlgebraKind, cfg):
    """Representation map + interior mask + metadata for every algebra kind."""
    p = cfg["p"]
    cutoff = cfg["cutoff"]
    m_b = cfg["modes_b"]
    m_f = cfg["modes_f"]
    if m_b is None:
        m_b = 0 if kind in (AlgebraKind.CAR, AlgebraKind.PF) else 1
    if m_f is None:
        m_f = 0 if kind in (AlgebraKind.CCR, AlgebraKind.PB) else 1
    meta = {"kind": kind.value, "p": p, "modes_b": m_b, "modes_f": m_f, "cutoff": cutoff}
    if kind in (AlgebraKind.CCR, AlgebraKind.CAR, AlgebraKind.WS, AlgebraKind.WAS):
        copy = build_copy(
            m_b if kind is not AlgebraKind.CAR else 0,
            m_f if kind is not AlgebraKind.CCR else 0,
            cutoff if kind is not AlgebraKind.CAR else (cutoff if m_b else None),
            bf_anticommute=(kind is AlgebraKind.WAS),
        )
        interior = (
            copy.total_quanta <= cutoff - 3 if copy.m_b else np.ones(copy.dim, dtype=bool)
        )
        return copy.ops, interior, None, meta
    if kind in GREEN:
        theta, deg, how = _resolve_theta(kind, cfg["theta"], p, cutoff, cfg["tol"])
        rep = build_green_rep(
            kind, p, m_b, m_f, cutoff if m_b else None, theta, deg
        )
        meta["theta"] = _theta_payload(theta)
        meta["theta_selector"] = how
        return rep.generators, rep.interior_mask(), theta, meta
    # straight mixtures: braided product of the two single-species reps
    thb, degb = default_theta(AlgebraKind.PB)
    thf, degf = default_theta(AlgebraKind.PF)
    pb = build_green_rep(AlgebraKind.PB, p, m_b, 0, cutoff, thb, degb)
    pf = build_green_rep(AlgebraKind.PF, p, 0, m_f, None, thf, degf)
    group = degb.group
    cross = (
        Bicharacter.trivial(group) if kind is AlgebraKind.SCR else Bicharacter(group, [[1]])
    )
    prod = braided_product_rep(pb, pf, cross)
    meta["theta"] = _theta_payload(cross)
    meta["theta_selector"] = "canonical"
    return prod.generators, prod.interior_mask(), cross, meta


def cmd_verify(cfg) -> int:
    if not cfg["kind"]:
        raise ArgumentError("--kind is required")
    kind = AlgebraKind.parse(cfg["kind"])
    out = _outdir(cfg)
    rep, interior, _theta, meta = _build_for_verify(kind, cfg)
    report = verify_relations(rep, kind, interior=interior, tol=cfg["tol"])
    payload = {"config": meta, "tol": cfg["tol"], **report.to_payload()}
    io.write_json(out / "verify_report.json", payload)
    return EXIT_OK if report.max_residual <= cfg["tol"] else EXIT_INVARIANT


def cmd_fock(cfg) -> int:
    if not cfg["kind"]:
        raise ArgumentError("--kind is required")
    kind = AlgebraKind.parse(cfg["kind"])
    out = _outdir(cfg)
    p = cfg["p"]
    cutoff = cfg["cutoff"]
    if kind is AlgebraKind.PBF:
        theta, deg, how = _resolve_theta(kind, cfg["theta"], p, cutoff, cfg["tol"])
        rep = build_pbf_rep(p, cutoff, theta, deg)
        dims = subspace_dims(rep)
        io.write_json(
            out / "ladder.json",
            {
                "p": p,
                "cutoff": cutoff,
                "theta": _theta_payload(theta),
                "theta_selector": how,
                "subspaces": [
                    {"m": m, "n": n, "dim": d} for (m, n), d in sorted(dims.items())
                ],
            },
        )
        rows = []
        labels = [str(l) for l in rep.labels]
        for name, mat in (("b+", rep.b_plus), ("b-", rep.b_minus), ("f+", rep.f_plus), ("f-", rep.f_minus)):
            for i in range(rep.dim):
                for j in range(rep.dim):
                    v = mat[i, j]
                    if abs(v) > 1e-12:
                        rows.append((name, labels[i], labels[j], float(v.real), float(v.imag)))
        io.write_csv(out / "matrix_elements.csv", ("generator", "bra", "ket", "re", "im"), rows)
        return EXIT_OK
    if kind not in GREEN:
        raise ArgumentError("fock export supports PB, PF, PBF, PFB")
    m_b = cfg["modes_b"] if cfg["modes_b"] is not None else (0 if kind is AlgebraKind.PF else 1)
    m_f = cfg["modes_f"] if cfg["modes_f"] is not None else (0 if kind is AlgebraKind.PB else 1)
    theta, deg, how = _resolve_theta(kind, cfg["theta"], p, cutoff, cfg["tol"])
    rep = build_green_rep(kind, p, m_b, m_f, cutoff if m_b else None, theta, deg)
    sub = fock_submodule(rep)
    single_mode_pb = kind is AlgebraKind.PB and m_b == 1
    rows = []
    for label in sorted(sub.generators, key=lambda l: (l.species, l.mode, -l.sign)):
        mat = sub.generators[label]
        for i in range(sub.dim):
            for j in range(sub.dim):
                v = mat[i, j]
                if abs(v) <= 1e-12:
                    continue
                ref = ""
                err = ""
                if single_mode_pb and label.species == "b":
                    ket_level = int(sub.quanta[j] if label.sign > 0 else sub.quanta[i])
                    bra_level = int(sub.quanta[i] if label.sign > 0 else sub.quanta[j])
                    if bra_level == ket_level + 1 and ket_level <= cutoff - 3:
                        sm = single_mode_reference(p, ket_level // 2)
                        r = sm.me_up_even if ket_level % 2 == 0 else sm.me_up_odd
                        ref = io.fmt_float(float(r))
                        err = io.fmt_float(float(abs(abs(v) - r)))
                rows.append(
                    (str(label), i, j, float(v.real), float(v.imag), ref, err)
                )
    io.write_csv(
        out / "matrix_elements.csv",
        ("generator", "bra", "ket", "re", "im", "reference", "abs_err"),
        rows,
    )
    io.write_json(
        out / "basis.json",
        {
            "kind": kind.value,
            "p": p,
            "modes_b": m_b,
            "modes_f": m_f,
            "cutoff": cutoff if m_b else None,
            "theta": _theta_payload(theta),
            "theta_selector": how,
            "submodule_dim": sub.dim,
            "full_dim": rep.dim,
            "states": [
                {"index": i, "quanta": int(q)} for i, q in enumerate(sub.quanta)
            ],
        },
    )
    return EXIT_OK


def _initial_state(spec: str, rep):
    if spec.startswith("@"):
        vals = []
        for line in Path(spec[1:]).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line:
                vals.append(_parse_complex(line))
        v = np.asarray(vals, dtype=complex)
        if v.size != rep.dim:
            raise ArgumentError(
                f"state file has {v.size} entries; ladder dimension is {rep.dim}"
            )
        n = np.linalg.norm(v)
        if n == 0:
            raise ArgumentError("state file holds the zero vector")
        return v / n
    parts = spec.split(",")
    if len(parts) not in (2, 3):
        raise ArgumentError(f'cannot parse --init {spec!r}; use "m,n" or "m,n,branch"')
    m, n = int(parts[0]), int(parts[1])
    branch = int(parts[2]) if len(parts) == 3 else 0
    return basis_state(rep, m, n, branch)


def cmd_jc(cfg) -> int:
    out = _outdir(cfg)
    kind = HamiltonianKind.parse(cfg["hamiltonian"])
    p = cfg["p"]
    cutoff = cfg["cutoff"]
    theta, deg, how = _resolve_theta(AlgebraKind.PBF, cfg["theta"], p, cutoff, cfg["tol"])
    rep = build_pbf_rep(p, cutoff, theta, deg)
    params = JCParams(
        omega_b=cfg["omega_b"],
        omega_f=cfg["omega_f"],
        p=p,
        boson_cutoff=cutoff,
        lam=cfg["lam"],
        lam1=cfg["lam1"],
        lam2=cfg["lam2"],
    )
    h = build_hamiltonian(kind, params, rep)
    eigvals = np.sort(np.linalg.eigvalsh((h + h.conj().T) / 2))
    io.write_csv(
        out / "spectrum.csv",
        ("index", "eigenvalue"),
        [(i, float(v)) for i, v in enumerate(eigvals)],
    )

    psi0 = _initial_state(cfg["init"], rep)
    times = np.linspace(0.0, cfg["t_max"], cfg["t_steps"] + 1)
    quench = evolve(h, psi0, times, rep)
    keys = sorted(quench.populations)
    header = ["t"] + [f"P_{m}_{n}" for m, n in keys]
    rows = []
    for ti, t in enumerate(times):
        rows.append(
            [float(t)] + [float(quench.populations[k][ti]) for k in keys]
        )
    io.write_csv(out / "dynamics.csv", header, rows)

    checks = {}
    herm = float(np.max(np.abs(h - h.conj().T)))
    checks["hermiticity"] = {"value": herm, "tol": 1e-12, "pass": herm <= 1e-12}
    h_int = interaction_hamiltonian(kind, params, rep)
    sel = selection_rule_check(h_int, rep)
    checks["selection_rule"] = {
        "value": sel.max_offblock,
        "tol": 1e-12,
        "pass": sel.max_offblock <= 1e-12,
    }
    h_free = free_hamiltonian(params, rep)
    interior = np.flatnonzero(rep.interior_mask())
    want = params.omega_b * rep.m_values + params.omega_f * rep.n_values
    free_dev = float(
        np.max(
            np.abs(
                (h_free - np.diag(want.astype(complex)))[np.ix_(interior, interior)]
            )
        )
    )
    checks["free_pattern"] = {"value": free_dev, "tol": 1e-10, "pass": free_dev <= 1e-10}
    checks["norm_drift"] = {
        "value": quench.norm_drift,
        "tol": 1e-10,
        "pass": quench.norm_drift <= 1e-10,
    }
    if cfg["omega_b"] == cfg["omega_f"]:
        n_tot = total_excitation_operator(rep)
        comm = h @ n_tot - n_tot @ h
        dev = float(np.max(np.abs(comm[np.ix_(interior, interior)])))
        checks["excitation_conserved"] = {"value": dev, "tol": 1e-12, "pass": dev <= 1e-12}

    ok = all(c["pass"] for c in checks.values())
    manifest = {
        "command": "jc",
        "hamiltonian": kind.value,
        "params": {
            "omega_b": cfg["omega_b"],
            "omega_f": cfg["omega_f"],
            "p": p,
            "cutoff": cutoff,
            "lambda": _complex_payload(cfg["lam"]),
            "lambda1": _complex_payload(cfg["lam1"]),
            "lambda2": _complex_payload(cfg["lam2"]),
            "t_max": cfg["t_max"],
            "t_steps": cfg["t_steps"],
            "init": cfg["init"],
        },
        "theta": _theta_payload(theta),
        "theta_selector": how,
        "ladder_dim": rep.dim,
        "subspaces": [
            {"m": m, "n": n, "dim": d} for (m, n), d in sorted(subspace_dims(rep).items())
        ],
        "checks": checks,
        "all_checks_pass": ok,
    }
    io.write_json(out / "manifest.json", manifest)
    return EXIT_OK if ok else EXIT_INVARIANT


def _complex_payload(z):
    if z is None:
        return None
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parastat",
        description="computational parastatistics workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, options in _OPTIONS.items():
        p = sub.add_parser(name)
        for flag, dest, conv, _default, helptext in options:
            p.add_argument(flag, dest=dest, type=conv, default=None, help=helptext)
    return parser


_HANDLERS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "fock": cmd_fock,
    "jc": cmd_jc,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = _resolve(ns, _OPTIONS[ns.command])
        return _HANDLERS[ns.command](cfg)
    except (ArgumentError, HermiticityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except SizingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZING
    except ParastatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
