"""Command-line harness.

Forms travel in the interchange format ``n;a_0,a_1,...,a_n`` (decimal,
leading coefficient first), one per line; commands read them from positional
arguments or, with ``-``, from stdin.  Outputs are CSV or JSON-lines on
stdout as noted per subcommand.  The sieve reads a structured-text config
(``key = value`` lines, ``#`` comments) and exits 0 on success, 2 when the
candidate budget was exhausted and the output is partial.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .arith import factorint
from .forms import BinaryForm, discriminant, form_from_text, form_to_text
from .localdata import (
    classify_order,
    count_restricted_sudo_maximal,
    dedekind_kummer,
    field_profiles_from_form,
    profiles_from_text,
)
from .modp import count_H, factor_modp, singular_density
from .reduce import gram_profile, is_normally_minkowski_reduced
from .sieve import SieveConfig, run_sieve, weighted_count
from .weakdiv import WeakDivWitness, find_witness, is_uwd, max_witness, weakly_divisible_ring
from .binring import canonical_basis_ring


def _read_forms(args) -> list[BinaryForm]:
    if args.form == "-":
        return [form_from_text(line) for line in sys.stdin if line.strip()]
    return [form_from_text(args.form)]


def _cmd_factor_modp(args):
    for f in _read_forms(args):
        fac = factor_modp(f, args.p)
        parts = [f"({form_to_text(q)})^{e}" for q, e in fac.factors]
        if fac.infinity_multiplicity:
            parts.insert(0, f"Y^{fac.infinity_multiplicity}")
        print(f"{form_to_text(f)} = {fac.unit} * " + " * ".join(parts) + f"  (mod {args.p})")
    return 0


def _cmd_hpf(args):
    print(count_H(args.p, args.f))
    return 0


def _cmd_density(args):
    print("n,p,V,W,c_p_num,c_p_den")
    for p in args.p:
        v, w, cp = singular_density(args.n, p, budget=args.budget)
        print(f"{args.n},{p},{v},{w},{cp.numerator},{cp.denominator}")
    return 0


def _cmd_ring(args):
    for f in _read_forms(args):
        ring = canonical_basis_ring(f)
        for i in range(ring.n):
            for j in range(ring.n):
                print(
                    json.dumps(
                        {
                            "basis": ring.basis_names[i],
                            "row": j,
                            "coeffs": list(ring.structure[i][j]),
                        },
                        sort_keys=True,
                    )
                )
        print(json.dumps({"disc": ring.disc, "form": form_to_text(f)}, sort_keys=True))
    return 0


def _cmd_weakdiv(args):
    for f in _read_forms(args):
        w = find_witness(f, args.m)
        if w is None:
            print(json.dumps({"form": form_to_text(f), "m": args.m, "witness": None}))
            continue
        ring = weakly_divisible_ring(f, w)
        print(
            json.dumps(
                {
                    "form": form_to_text(f),
                    "m": w.m,
                    "l": w.l,
                    "ring_disc": ring.disc,
                },
                sort_keys=True,
            )
        )
    return 0


def _cmd_uwd(args):
    for f in _read_forms(args):
        rep = is_uwd(f)
        for p, prof, verdict in rep.per_prime:
            print(
                json.dumps(
                    {
                        "form": form_to_text(f),
                        "p": p,
                        "kind": prof.kind,
                        "witness": prof.witness,
                        "verdict": verdict,
                    },
                    sort_keys=True,
                )
            )
        out = {"form": form_to_text(f), "is_uwd": rep.is_uwd}
        if rep.is_uwd and args.max_witness:
            mw = max_witness(f)
            out.update({"m_f": mw.m_f, "l_f": mw.l_f, "squarefree_part": mw.s})
        print(json.dumps(out, sort_keys=True))
    return 0


def _cmd_dedekind(args):
    print("form,p,e,f,locally_maximal,factor")
    for f in _read_forms(args):
        for p in args.p:
            prof = dedekind_kummer(f, p)
            for part in prof.parts:
                src = (
                    "Y"
                    if part.source_factor == -1
                    else form_to_text(prof.factorization.factors[part.source_factor][0])
                )
                print(
                    f"\"{form_to_text(f)}\",{p},{part.e},{part.f},"
                    f"{int(part.locally_maximal)},\"{src}\""
                )
    return 0


def _cmd_classify(args):
    print("form,m,l,p,tag,case,index_exponent,sudo,restricted")
    for f in _read_forms(args):
        w = WeakDivWitness(args.m, args.l)
        oc = classify_order(f, w)
        for p, tag, desc in oc.per_prime:
            case = desc.case if desc else ""
            idx = desc.index_exponent if desc else ""
            print(
                f'"{form_to_text(f)}",{args.m},{args.l},{p},{tag},{case},{idx},'
                f"{int(oc.sudo_maximal)},{int(oc.restricted_sudo_maximal)}"
            )
        if not oc.per_prime:
            print(
                f'"{form_to_text(f)}",{args.m},{args.l},,maximal-everywhere,,,'
                f"{int(oc.sudo_maximal)},{int(oc.restricted_sudo_maximal)}"
            )
    return 0


def _cmd_count_orders(args):
    if args.profiles:
        with open(args.profiles, "r", encoding="utf-8") as fh:
            profiles = profiles_from_text(fh.read())
    else:
        f = form_from_text(args.form)
        profiles = field_profiles_from_form(f, args.X)
    counts, sums, zsums = count_restricted_sudo_maximal(profiles, args.X)
    print("index,count,partial_sum,zeta_power_partial_sum")
    for j in range(1, args.X + 1):
        print(f"{j},{counts[j]},{sums[j]},{zsums[j]}")
    return 0


def _cmd_reduce(args):
    for f in _read_forms(args):
        prof = gram_profile(f, args.m, args.precision)
        verdict = is_normally_minkowski_reduced(prof)
        ts = ",".join(str(float(t)) for t in prof.t)
        print(f"{form_to_text(f)} m={args.m} t=[{ts}] r={prof.r} s={prof.s} reduced={verdict}")
    return 0


def _parse_config(path: str) -> SieveConfig:
    keys: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            k, v = (part.strip() for part in line.split("=", 1))
            keys[k] = v
    known = {
        "n",
        "s",
        "t",
        "m_list",
        "M",
        "rho_b",
        "precision",
        "budget",
        "seed",
        "out",
        "factor_budget_digits",
    }
    unknown = set(keys) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return SieveConfig(
        n=int(keys["n"]),
        s=int(keys["s"]),
        t=int(keys.get("t", "1")),
        m_list=tuple(int(x) for x in keys.get("m_list", "1").split(",")),
        M=int(keys.get("M", "2")),
        rho_b=float(keys.get("rho_b", "0")),
        precision=int(keys.get("precision", "128")),
        budget=int(keys.get("budget", str(10**7))),
        seed=int(keys.get("seed", "0")),
        out=keys.get("out"),
        factor_budget_digits=int(keys.get("factor_budget_digits", "30")),
    )


def _cmd_sieve(args):
    cfg = _parse_config(args.config)
    report = run_sieve(cfg)
    csv_text = "\n".join(report.csv_rows()) + "\n"
    detail_text = "\n".join(report.detail_rows())
    if detail_text:
        detail_text += "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        with open(cfg.out + ".jsonl", "w", encoding="utf-8") as fh:
            fh.write(detail_text)
    else:
        sys.stdout.write(csv_text)
        sys.stdout.write(detail_text)
    wc = weighted_count([report])
    print(
        f"# rings={wc['rings']} weighted_sum={wc['weighted_sum']} "
        f"max_disc={wc['max_disc']} partial={report.partial}",
        file=sys.stderr,
    )
    return 2 if report.partial else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="binrings",
        description="binary rings, weak divisibility, and the UWD coefficient-box sieve",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("factor-modp", help="factor forms modulo p")
    p.add_argument("form", help="form in 'n;a_0,...,a_n' format, or - for stdin")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(fn=_cmd_factor_modp)

    p = sub.add_parser("hpf", help="H(p,f): monic irreducibles of degree f over F_p")
    p.add_argument("p", type=int)
    p.add_argument("f", type=int)
    p.set_defaults(fn=_cmd_hpf)

    p = sub.add_parser("density", help="brute-force singular-locus densities c_p")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=int, nargs="+", required=True)
    p.add_argument("--budget", type=int, default=10**8)
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("ring", help="structure table of the binary ring R_f")
    p.add_argument("form")
    p.set_defaults(fn=_cmd_ring)

    p = sub.add_parser("weakdiv", help="find a weak-divisibility witness and build R'")
    p.add_argument("form")
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(fn=_cmd_weakdiv)

    p = sub.add_parser("uwd", help="ultra-weak divisibility report")
    p.add_argument("form")
    p.add_argument("--max-witness", action="store_true")
    p.set_defaults(fn=_cmd_uwd)

    p = sub.add_parser("dedekind", help="Dedekind-Kummer parts with local maximality")
    p.add_argument("form")
    p.add_argument("-p", type=int, nargs="+", required=True)
    p.set_defaults(fn=_cmd_dedekind)

    p = sub.add_parser("classify", help="order classification of R'_{(f,m,l)}")
    p.add_argument("form")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("-l", type=int, default=0)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("count-orders", help="restricted sudo-maximal counting")
    p.add_argument("-X", type=int, required=True)
    p.add_argument("--profiles", help="profile file: lines 'p: (e,f,max);...'")
    p.add_argument("--form", help="derive profiles from a UWD form")
    p.set_defaults(fn=_cmd_count_orders)

    p = sub.add_parser("reduce", help="Gram profile and the Minkowski-reduced verdict")
    p.add_argument("form")
    p.add_argument("-m", type=int, default=1)
    p.add_argument("--precision", type=int, default=128)
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("sieve", help="run the coefficient-box sieve from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=_cmd_sieve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
