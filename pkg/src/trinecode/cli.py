"""Command-line entry point: ``trinecode <command> [flags]``.

Exit codes: 0 success, 2 usage error, 1 computation failure. Flags are
long-form only. Tables go to stdout unless ``--out`` is given.
"""

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import circuits, expsim, infotheory, reliability, trine
from .infotheory import mutual_information, uniform

DEFAULT_SEED = 0
SWEEP_ALIASES = {"acc": "acc_polarization", "srm": "srm_collective"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        kw.setdefault("allow_abbrev", False)
        super().__init__(*a, **kw)


def _fmt(x):
    return f"{x:.10g}"


def _csv(header, rows):
    lines = [",".join(header)]
    lines += [",".join(v if isinstance(v, str) else _fmt(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def _channel_dict(ch):
    lab = lambda v: "".join(map(str, v)) if isinstance(v, tuple) else str(v)  # noqa: E731
    return {
        "inputs": [lab(x) for x in ch.input_labels],
        "outputs": [lab(y) for y in ch.output_labels],
        "p": np.asarray(ch).tolist(),
    }


def cmd_report(args):
    rep = infotheory.superadditivity_report()
    chans = {k: trine.ideal_channel(k) for k in ("acc", "c1", "srm")}
    if args.format == "json":
        doc = dict(rep)
        doc["channels"] = {k: _channel_dict(v) for k, v in chans.items()}
        return json.dumps(doc, indent=2) + "\n"
    out = [f"{k},{v:.4f},{v:.10f}" for k, v in rep.items()]
    text = "quantity,rounded,value\n" + "\n".join(out) + "\n"
    for k, ch in chans.items():
        text += f"\n# channel {k}\n"
        text += _csv(("input",) + tuple(_channel_dict(ch)["outputs"]),
                     [(i,) + tuple(row) for i, row in
                      zip(_channel_dict(ch)["inputs"], np.asarray(ch))])
    return text


def cmd_sweep(args):
    if args.points <= 0:
        raise UsageError("--points must be positive")
    curve = infotheory.offset_sweep(SWEEP_ALIASES[args.kind], infotheory.default_grid(args.points))
    if args.format == "json":
        return json.dumps({"phi_off": curve.offsets.tolist(), "bits": curve.values.tolist()}) + "\n"
    return _csv(("phi_off", "bits"), zip(curve.offsets, curve.values))


def _circuit_report(target):
    if target == "srm":
        u = circuits.decoder_unitary()
        seq = circuits.decoder_circuit()
        states = [trine.codeword_state(x) for x in trine.LETTERS]
        outcome_map = circuits.DECODER_OUTCOMES
        expected = trine.closed_form_channel("srm")
        prep = lambda v: v  # noqa: E731
    else:
        ext = circuits.acc_extension()
        u = ext.unitary
        seq = circuits.acc_circuit()
        states = [trine.letter_state(x) for x in trine.LETTERS]
        outcome_map = ext.outcome_map
        expected = trine.closed_form_channel("acc")
        prep = ext.embed
    residual = float(np.max(np.abs(seq.matrix() - u)))
    prob_err = 0.0
    for st, row in zip(states, np.asarray(expected)):
        dist = circuits.outcome_distribution(seq, prep(st.vector), outcome_map)
        for lab, p in zip(expected.output_labels, row):
            prob_err = max(prob_err, abs(dist.get(lab, 0.0) - p))
        prob_err = max(prob_err, dist.get("null", 0.0))
    return seq, residual, prob_err


def cmd_circuit(args):
    seq, residual, prob_err = _circuit_report(args.target)
    ok = bool(residual <= 1e-10 and prob_err <= 1e-10)
    if args.format == "json":
        doc = {"target": args.target, "gates": seq.to_text().splitlines(),
               "gate_count": len(seq), "reconstruction_residual": residual,
               "outcome_probability_error": prob_err, "passed": ok}
        return json.dumps(doc, indent=2) + "\n"
    return (seq.to_text() + "\n"
            f"# gate_count {len(seq)}\n"
            f"# reconstruction_residual {residual:.3e}\n"
            f"# outcome_probability_error {prob_err:.3e}\n"
            f"# check {'pass' if ok else 'FAIL'}\n")


def cmd_qchc(args):
    rates = args.rate or [0.62]
    for r in rates:
        for scheme in reliability.SCHEMES:
            cap = reliability.ceiling(scheme)
            if r >= cap:
                raise ValueError(f"k/n = {r} is at or above the {scheme} ceiling {cap:.6f}")
    if args.solve is not None:
        rows = [(s, r, reliability.codelength_for(args.solve, r, s))
                for s in reliability.SCHEMES for r in rates]
        if args.format == "json":
            return json.dumps([{"scheme": s, "k_over_n": r, "target_pe": args.solve, "n": n}
                               for s, r, n in rows], indent=2) + "\n"
        return "scheme,k_over_n,target_pe,n\n" + "".join(
            f"{s},{_fmt(r)},{_fmt(args.solve)},{n}\n" for s, r, n in rows)
    lengths = args.n or [100, 1000, 10000, 100000]
    table = reliability.qchc_compare(rates, lengths)
    if args.format == "json":
        return json.dumps(table, indent=2) + "\n"
    return reliability.rows_to_csv(table)


def cmd_expsim(args):
    try:
        nm = expsim.NoiseModel(
            visibility=args.visibility, dark_rate=args.dark,
            background_rate=args.background, detector_efficiency=args.efficiency,
            contraction=args.contraction)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.duration <= 0 or args.signal_rate < 0:
        raise UsageError("--duration must be positive and --signal-rate non-negative")
    res, ct = expsim.reproduce_experiment(args.kind, nm, args.seed, args.signal_rate,
                                          args.duration, return_counts=True)
    doc = {"kind": args.kind, "bits": res.bits, "n": res.n, "per_letter": res.per_letter,
           "seed": args.seed, "noise_model": asdict(nm), "duration": args.duration}
    if args.out is not None:
        with open(args.out + ".json", "w") as fh:
            fh.write(ct.sidecar_json() + "\n")
    if args.format == "csv":
        return ct.to_csv()
    doc["counts_csv"] = ct.to_csv()
    return json.dumps(doc, indent=2) + "\n"


def cmd_srm_table(args):
    ch = trine.ideal_channel("srm")
    d = _channel_dict(ch)
    if args.format == "json":
        d["mutual_information"] = mutual_information(uniform(3), ch)
        return json.dumps(d, indent=2) + "\n"
    rows = [(i,) + tuple(r) for i, r in zip(d["inputs"], np.asarray(ch))]
    return _csv(("input",) + tuple(d["outputs"]), rows)


def cmd_reliability(args):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    rows = []
    for scheme in reliability.SCHEMES:
        ch = (trine.closed_form_channel("c1") if scheme == "classical"
              else trine.closed_form_channel("srm"))
        cap = reliability.capacity(ch)
        for r in np.linspace(0.0, cap, args.points, endpoint=False):
            res = (reliability.er_bsc_closed(r, reliability.bsc_epsilon()) if scheme == "classical"
                   else reliability.er_ternary_closed(r))
            rows.append((scheme, r, res.er, res.rho_star, res.regime))
    if args.format == "json":
        keys = ("scheme", "R", "Er", "rho", "regime")
        return json.dumps([dict(zip(keys, r)) for r in rows], indent=2) + "\n"
    return "scheme,R,Er,rho,regime\n" + "".join(
        f"{s},{_fmt(r)},{_fmt(e)},{_fmt(rho)},{reg}\n" for s, r, e, rho, reg in rows)


def build_parser():
    p = _Parser(prog="trinecode", description="Trine superadditive coding computations.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="csv by default; json for expsim")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("report", parents=[common])
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("sweep", parents=[common])
    s.add_argument("kind", choices=sorted(SWEEP_ALIASES))
    s.add_argument("--points", type=int, default=121)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("circuit", parents=[common])
    s.add_argument("target", choices=("srm", "acc"))
    s.set_defaults(func=cmd_circuit)

    s = sub.add_parser("qchc", parents=[common])
    s.add_argument("--rate", type=float, action="append", help="k/n; repeatable")
    s.add_argument("--n", type=int, action="append", help="code length; repeatable")
    s.add_argument("--solve", type=float, default=None, metavar="TARGET_PE")
    s.set_defaults(func=cmd_qchc)

    s = sub.add_parser("expsim", parents=[common])
    s.add_argument("kind", choices=expsim.EXPERIMENTS)
    s.add_argument("--visibility", type=float, default=None)
    s.add_argument("--dark", type=float, default=100.0)
    s.add_argument("--background", type=float, default=300.0)
    s.add_argument("--efficiency", type=float, default=0.7)
    s.add_argument("--contraction", choices=("linear", "squared"), default="linear")
    s.add_argument("--duration", type=float, default=expsim.DEFAULT_DURATION)
    s.add_argument("--signal-rate", type=float, default=expsim.DEFAULT_SIGNAL_RATE)
    s.set_defaults(func=cmd_expsim)

    s = sub.add_parser("srm-table", parents=[common])
    s.set_defaults(func=cmd_srm_table)

    s = sub.add_parser("reliability", parents=[common])
    s.add_argument("--points", type=int, default=50)
    s.set_defaults(func=cmd_reliability)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    if getattr(args, "visibility", 0) is None:
        args.visibility = expsim.REPORTED_VISIBILITY.get(args.kind, 0.99)
    if args.format is None:
        args.format = "json" if args.command == "expsim" else "csv"
    try:
        text = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError) as exc:
        print(f"trinecode: error: {exc}", file=sys.stderr)
        return 1
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
