"""Command-line interface.

Subcommands mirror the package layout: quiver building and mutation, grid
seeds and runs, sequence builders, the polynomial oracle, the monomial
constructors, the verification suites, and the explorer backend server.
Exit code 0 means every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .gridseeds import initial_seed, run
from .heights import HeightFunction, all_height_functions
from .hl import GhlSpec, exchange_predictions, ghl_monomial
from .oracle import closure, var_names
from .sequences import (
    build_q_xi,
    ell_policy,
    q_xi_prefix,
    seq_S,
    seq_S_prime,
    seq_S_t,
)
from .verify import (
    VerificationReport,
    appendix_configuration_family,
    random_ghl_spec,
    verify_appendix,
    verify_ghl,
    verify_grid_embedding,
    verify_highest_weights,
    verify_lemma_arrows,
    verify_oracle_suite,
)


def _xi(text: str) -> HeightFunction:
    return HeightFunction.parse(text)


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",")) if text else ()


def _emit(data, as_json: bool) -> None:
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        print(data)


def cmd_quiver(args) -> int:
    if args.cmd == "export":
        from .gridseeds import run as run_tracked
        from .verify import band_seed

        seed = band_seed(_xi(args.xi), args.r)
        if args.seq:
            seed = run_tracked(seed, args.seq.split(","))
        print(json.dumps(seed.to_json(), separators=(",", ":")))
        return 0
    q = build_q_xi(_xi(args.xi))
    if args.cmd == "mutate":
        q = q.mutate_seq(args.seq.split(","))
    fmt = "dot" if args.dot else "json"
    print(q.encode(fmt))
    return 0


def cmd_grid(args) -> int:
    seed = initial_seed(args.n, args.ell)
    if args.cmd == "run":
        if args.seq:
            seed = run(seed, args.seq.split(";"))
        elif args.xi:
            from .sequences import to_Sm_prime

            seed, _ = to_Sm_prime(seed, _xi(args.xi), args.r)
    print(json.dumps(seed.to_json(), indent=2 if args.pretty else None))
    return 0


def cmd_seq(args) -> int:
    xi = _xi(args.xi)
    n = xi.n
    ell = args.ell if args.ell else ell_policy(n, args.r)
    if args.kind == "S":
        out = seq_S(xi, args.r, n, ell)
    elif args.kind == "St":
        out = seq_S_t(xi, args.r, args.t, ell)
    elif args.kind == "Sprime":
        out, _ = seq_S_prime(xi, _ints(args.idx), _ints(args.anchors), _ints(args.rs), args.r, n)
    elif args.kind == "prefix":
        q = q_xi_prefix(xi, args.i, args.j)
        print(q.encode("json"))
        return 0
    else:
        raise SystemExit(f"unknown kind {args.kind}")
    print(json.dumps(out))
    return 0


def cmd_oracle(args) -> int:
    xi = _xi(args.xi)
    names = var_names(xi.n)
    if args.cmd == "closure":
        cl = closure(xi, cap=args.cap)
        if args.json:
            print(json.dumps(sorted(p.text(names) for p in cl), indent=2))
        else:
            print(f"{len(cl)} cluster variables")
            for p in sorted(p.text(names) for p in cl):
                print(" ", p)
        return 0
    rep = verify_oracle_suite(xi)
    _emit(rep.to_json(), args.json)
    return 0 if rep.passed else 1


def cmd_hl(args) -> int:
    if args.cmd == "ghl":
        spec = GhlSpec(_ints(args.idx), _ints(args.anchors), args.r, _ints(args.rs))
        m = ghl_monomial(spec)
        print(json.dumps(m.to_json()) if args.json else m.text())
        return 0
    xi = _xi(args.xi)
    rels = exchange_predictions(xi, args.i, args.j, args.r)
    print(json.dumps([rel.to_json() for rel in rels], indent=2))
    return 0


def _sweep_xis(n_max: int, anchor: int = 0):
    for n in range(1, n_max + 1):
        yield from all_height_functions(n, anchor=anchor)


def cmd_verify(args) -> int:
    reports: list[VerificationReport] = []
    if args.suite == "arrows":
        if args.xi:
            reports.append(verify_lemma_arrows(_xi(args.xi)))
        else:
            for xi in _sweep_xis(args.n):
                if xi.n >= 2:
                    reports.append(verify_lemma_arrows(xi))
    elif args.suite == "highest":
        xis = [_xi(args.xi)] if args.xi else list(_sweep_xis(args.n))
        for xi in xis:
            for r in range(1, args.r + 1):
                reports.append(verify_highest_weights(xi, r))
    elif args.suite == "embedding":
        xis = [_xi(args.xi)] if args.xi else list(_sweep_xis(args.n))
        for xi in xis:
            for r in range(1, args.r + 1):
                reports.append(verify_grid_embedding(xi, r))
    elif args.suite == "ghl":
        rng = random.Random(args.seed)
        for _ in range(args.count):
            reports.append(verify_ghl(random_ghl_spec(rng)))
    elif args.suite == "appendix":
        for spec in appendix_configuration_family():
            reports.append(verify_appendix(spec))
    elif args.suite == "oracle":
        xis = [_xi(args.xi)] if args.xi else list(_sweep_xis(min(args.n, 5)))
        for xi in xis:
            reports.append(verify_oracle_suite(xi))
    else:
        raise SystemExit(f"unknown suite {args.suite}")

    passed = all(rep.passed for rep in reports)
    checked = sum(rep.checked for rep in reports)
    if args.json:
        print(json.dumps([rep.to_json() for rep in reports], indent=2))
    else:
        for rep in reports:
            if not rep.passed:
                print(f"FAIL {rep.suite} {rep.params}")
                for f in rep.failures[:3]:
                    print("   ", json.dumps(f))
        print(f"suite {args.suite}: {'PASS' if passed else 'FAIL'} ({len(reports)} reports, {checked} checks)")
    return 0 if passed else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hlcluster")
    sub = p.add_subparsers(dest="group", required=True)

    q = sub.add_parser("quiver", help="band quiver building and mutation")
    q.add_argument("cmd", choices=["build", "mutate", "export"])
    q.add_argument("--xi", required=True)
    q.add_argument("--seq", default="")
    q.add_argument("--r", type=int, default=1)
    q.add_argument("--dot", action="store_true")
    q.set_defaults(fn=cmd_quiver)

    g = sub.add_parser("grid", help="grid seeds and tracked runs")
    g.add_argument("cmd", choices=["init", "run"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--r", type=int, default=1)
    g.add_argument("--xi", default="")
    g.add_argument("--seq", default="", help='semicolon-separated vertices "i,k;i,k"')
    g.add_argument("--pretty", action="store_true")
    g.set_defaults(fn=cmd_grid)

    s = sub.add_parser("seq", help="mutation sequence builders")
    s.add_argument("build", nargs="?")
    s.add_argument("--kind", required=True, choices=["S", "St", "Sprime", "prefix"])
    s.add_argument("--xi", required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--ell", type=int, default=0)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--idx", default="")
    s.add_argument("--anchors", default="")
    s.add_argument("--rs", default="")
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--j", type=int, default=1)
    s.set_defaults(fn=cmd_seq)

    o = sub.add_parser("oracle", help="exact polynomial engine")
    o.add_argument("cmd", choices=["closure", "check"])
    o.add_argument("--xi", required=True)
    o.add_argument("--cap", type=int, default=10_000)
    o.add_argument("--json", action="store_true")
    o.set_defaults(fn=cmd_oracle)

    h = sub.add_parser("hl", help="monomial constructors and predictions")
    h.add_argument("cmd", choices=["ghl", "predict"])
    h.add_argument("--idx", default="")
    h.add_argument("--anchors", default="", help="comma-separated spectral anchors")
    h.add_argument("--r", type=int, default=1)
    h.add_argument("--rs", default="")
    h.add_argument("--xi", default="")
    h.add_argument("--i", type=int, default=1)
    h.add_argument("--j", type=int, default=1)
    h.add_argument("--json", action="store_true")
    h.set_defaults(fn=cmd_hl)

    v = sub.add_parser("verify", help="batch verification suites")
    v.add_argument("suite", choices=["arrows", "highest", "embedding", "ghl", "appendix", "oracle"])
    v.add_argument("--xi", default="")
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--r", type=int, default=2)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=20)
    v.add_argument("--json", action="store_true")
    v.set_defaults(fn=cmd_verify)

    srv = sub.add_parser("serve", help="explorer backend")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8075)
    srv.set_defaults(fn=cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
