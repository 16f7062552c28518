"""Command-line front end.

Subcommands reproduce the reference tables (with built-in pass/fail checks
against the embedded reference values), evaluate the CHSH quantity for a
chosen state family, dump curve data for plotting, and run the
conditional-preparation protocols.  All output is deterministic: the same
configuration yields byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bell, binning, catstates, fock, prepsim, reference_data, wavefunc

FMT = "%.6g"


def _write_rows(path, header, rows, fmt):
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(FMT % x if isinstance(x, float) else str(x) for x in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps([dict(zip(header, row)) for row in rows], indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _check(label, value, ref, tol) -> bool:
    ok = abs(value - ref) <= tol
    status = "pass" if ok else "FAIL"
    print(f"[{status}] {label}: {value:.6g} (reference {ref} +- {tol})")
    return ok


def cmd_table1(args) -> int:
    rows = catstates.table1()
    ok = all(
        _check(f"table1 N={n}", s, *reference_data.TABLE1[n]) for n, s in rows
    )
    _write_rows(args.output, ["N", "S"], rows, args.format)
    return 0 if ok else 1


def cmd_table2(args) -> int:
    n_values = tuple(args.N) if args.N else catstates.TABLE2_N
    rows = catstates.table2(n_values)
    ok = True
    for n, alpha_opt, s in rows:
        ref_alpha, alpha_tol, ref_s, s_tol = reference_data.TABLE2[n]
        ok &= _check(f"table2 N={n} alpha_opt", alpha_opt, ref_alpha, alpha_tol)
        ok &= _check(f"table2 N={n} S", s, ref_s, s_tol)
    _write_rows(args.output, ["N", "alpha_opt", "S"], rows, args.format)
    return 0 if ok else 1


def _build_state(args):
    if args.family == "cat2":
        if args.a is None:
            raise SystemExit("cat2 requires --a")
        return catstates.cat2(args.a)
    if args.family == "flat":
        return catstates.flat_cat(args.N, args.alpha)
    if args.family == "envelope":
        return catstates.envelope_cat(args.N, args.alpha, args.s)
    if args.family == "fock":
        if not args.file:
            raise SystemExit("fock family requires --file with f/g coefficient lists")
        spec = json.loads(Path(args.file).read_text())
        f = wavefunc.normalize(
            wavefunc.Wavefunction(fock_coeffs=tuple(map(complex, spec["f"])))
        )
        g = wavefunc.normalize(
            wavefunc.Wavefunction(fock_coeffs=tuple(map(complex, spec["g"])))
        )
        return f, g
    raise SystemExit(f"unknown family {args.family}")


def cmd_svalue(args) -> int:
    f, g = _build_state(args)
    part = binning.root_binning(f, g)
    v = bell.position_overlap(f, g, part)
    w = bell.momentum_overlap(f, g)
    s, theta_m = bell.chsh_max(v, w)
    report = {
        "family": args.family,
        "V": v,
        "W": w,
        "theta_m": theta_m,
        "S": s,
        "position_breakpoints": list(part.breakpoints),
        "position_signs": ["+" if x > 0 else "-" for x in part.signs],
    }
    if args.brute_check:
        theta = theta_m if args.theta is None else args.theta
        state = bell.TwoModeState(f=f, g=g, theta=theta)
        rep = bell.correlators(state)
        closed = {"qq": rep.e_qq, "pp": rep.e_pp, "qp": rep.e_qp, "pq": rep.e_pq}
        deltas = {}
        for pair in (("q", "q"), ("p", "p"), ("q", "p"), ("p", "q")):
            e = bell.brute_force_correlator(state, pair)
            deltas["".join(pair)] = e - closed["".join(pair)]
        report["theta"] = theta
        report["brute_force_deltas"] = deltas
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def sample_curves(f, g, points=2001):
    """(q, f, g) and (p, f~, h~) arrays used by the plotdata command."""
    wq = max(wavefunc.evaluation_window(f), wavefunc.evaluation_window(g))
    q = np.linspace(-wq, wq, points)
    ft, ht = bell.momentum_pair(f, g)
    wp = max(wavefunc.evaluation_window(ft), wavefunc.evaluation_window(ht))
    p = np.linspace(-wp, wp, points)
    return {
        "f_position": (q, wavefunc.evaluate_real(f, q)),
        "g_position": (q, wavefunc.evaluate_real(g, q)),
        "f_momentum": (p, wavefunc.evaluate_real(ft, p)),
        "h_momentum": (p, wavefunc.evaluate_real(ht, p)),
    }


def cmd_plotdata(args) -> int:
    f, g = _build_state(args)
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (x, y) in sample_curves(f, g, args.points).items():
        np.savetxt(outdir / f"{name}.dat", np.column_stack([x, y]), fmt="%.9e")
    print(f"wrote 4 curve files to {outdir}")
    return 0


def cmd_prepsim(args) -> int:
    if args.protocol == "g":
        res = prepsim.prepare_odd_cat(args.n, args.alpha)
        print(prepsim.format_trace(res.steps, res.success_prob))
        print(f"peaks: {len(res.peak_centers)}")
        print(f"fidelity vs odd cat: {res.fidelity:.9f}")
        report = {
            "protocol": "g",
            "success_prob": res.success_prob,
            "fidelity": res.fidelity,
            "peak_centers": list(res.peak_centers),
        }
    else:
        if args.theta == "optimal":
            f, g = catstates.flat_cat(2 ** (args.n + 1), args.alpha)
            s, _, _, theta = catstates.state_chsh(f, g)
            del s
        else:
            theta = float(args.theta)
        res = prepsim.prepare_entangled_cats(args.n, args.alpha, theta)
        print(prepsim.format_trace(res.steps, res.success_prob))
        print(f"fidelity vs ideal pair: {res.fidelity:.9f}")
        two_mode = prepsim.pair_to_two_mode(res)
        rep = bell.correlators(two_mode)
        print(f"downstream S at extracted theta: {rep.s_at_theta:.6f}")
        report = {
            "protocol": "psi",
            "theta": theta,
            "theta_extracted": res.theta_extracted,
            "success_prob": res.success_prob,
            "fidelity": res.fidelity,
            "S": rep.s_at_theta,
        }
    if args.output:
        Path(args.output).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def _positive_int(value):
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cvbell", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    t1 = sub.add_parser("table1", help="flat-family S values at spacing 15")
    t1.add_argument("--format", choices=["csv", "json"], default="csv")
    t1.add_argument("--output", default=None)
    t1.set_defaults(func=cmd_table1)

    t2 = sub.add_parser("table2", help="optimized envelope-family S values at s=0.3")
    t2.add_argument("--format", choices=["csv", "json"], default="csv")
    t2.add_argument("--output", default=None)
    t2.add_argument("--N", type=int, action="append", choices=list(catstates.TABLE2_N),
                    help="restrict to given N (repeatable)")
    t2.set_defaults(func=cmd_table2)

    sv = sub.add_parser("svalue", help="V, W, theta_m and S for a state family")
    _add_family_args(sv)
    sv.add_argument("--theta", type=float, default=None)
    sv.add_argument("--brute-check", action="store_true",
                    help="cross-check correlators by brute-force integration")
    sv.add_argument("--output", default=None)
    sv.set_defaults(func=cmd_svalue)

    pd = sub.add_parser("plotdata", help="sampled position/momentum curves")
    _add_family_args(pd)
    pd.add_argument("--points", type=int, default=2001)
    pd.add_argument("--output-dir", required=True)
    pd.set_defaults(func=cmd_plotdata)

    ps = sub.add_parser("prepsim", help="run a conditional preparation protocol")
    ps.add_argument("--protocol", choices=["g", "psi"], required=True)
    ps.add_argument("--n", type=_positive_int, required=True, help="number of doubling rounds")
    ps.add_argument("--alpha", type=float, required=True)
    ps.add_argument("--theta", default="optimal",
                    help="relative phase for the psi protocol, or 'optimal'")
    ps.add_argument("--output", default=None)
    ps.set_defaults(func=cmd_prepsim)
    return p


def _add_family_args(sp):
    sp.add_argument("--family", choices=["cat2", "flat", "envelope", "fock"], required=True)
    sp.add_argument("--a", type=float, default=None, help="half-spacing for cat2")
    sp.add_argument("--N", type=int, default=4)
    sp.add_argument("--alpha", type=float, default=10.0)
    sp.add_argument("--s", type=float, default=0.3)
    sp.add_argument("--file", default=None, help="JSON file with f/g Fock coefficients")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
