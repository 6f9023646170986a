"""Command-line front end.

Subcommands:

  validate   check machine files for format and rule errors
  run        run a machine on a word and print its output
  ilcheck    exhaustively test a machine for information loss
  lz         LZ78 encode / decode / ratio / bits
  seq        generate benchmark sequences
  pump       find and verify repetition decompositions
  experiment run a named comparison and print its verdict
  zoo        list or print the builtin machines

Exit codes: 0 on success, 1 on a failed check or run, 2 on usage errors.
"""

import argparse
import os
import sys

from . import harness, lz, pumping, sequences, zoo
from .kernels import IMPL
from .machine import (PdcFormatError, PdcRunError, format_pdc, il_check,
                      load_pdc, run, run_endmarked, run_traced)


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _resolve_machine(name):
    """A builtin machine name, or a path to a .pdc file."""
    builtins = zoo.builtin_machines()
    if name in builtins:
        return builtins[name]
    if name == "-" or os.path.exists(name):
        return load_pdc(_read_text(name))
    raise PdcFormatError(
        "no machine {!r}: not a builtin ({}) and not a file".format(
            name, ", ".join(sorted(builtins))))


def _get_word(args):
    if getattr(args, "stdin", False):
        return sys.stdin.read().strip()
    if args.input is None:
        raise PdcFormatError("need --input WORD or --stdin")
    return args.input


# ------------------------------------------------------------- subcommands

def cmd_validate(args):
    from .machine import parse_pdc, validate_spec
    bad = 0
    for path in args.files:
        try:
            spec = parse_pdc(_read_text(path))
        except PdcFormatError as exc:
            print("{}: INVALID\n  {}".format(path, exc))
            bad += 1
            continue
        report = validate_spec(spec)
        for w in report.warnings:
            print("{}: warning: {}".format(path, w))
        if report.ok:
            print("{}: ok ({} states, {} rules, mode {})".format(
                path, len(spec.states), len(spec.rules), spec.mode))
        else:
            print("{}: INVALID".format(path))
            for e in report.errors:
                print("  " + e)
            bad += 1
    return 1 if bad else 0


def cmd_run(args):
    spec = _resolve_machine(args.machine)
    word = _get_word(args)
    if args.trace:
        diagram = run_traced(spec, word, endmark=spec.mode == "endmark",
                             full=args.trace > 1)
        for col in diagram.columns:
            stack = " " + col.stack if col.stack is not None else ""
            print("{:>6} {:<12} top={} h={:<5} out={}{}".format(
                col.pos, col.state, col.top, col.height, col.outlen, stack))
        if not diagram.ok:
            print("error: {}".format(diagram.error))
            return 1
        return 0
    res = run_endmarked(spec, word) if spec.mode == "endmark" else run(spec, word)
    if not res.ok:
        print("error: {} after {} symbols (state {})".format(
            res.error, res.consumed, res.state))
        return 1
    print(res.output)
    if args.verbose:
        print("state: {}".format(res.state), file=sys.stderr)
        print("stack: {}".format(res.stack), file=sys.stderr)
    return 0


def cmd_ilcheck(args):
    spec = _resolve_machine(args.machine)
    report = il_check(spec, args.maxlen)
    print("checked {} words up to length {}".format(report.checked,
                                                    args.maxlen))
    for first, second in report.collisions:
        print("collision: {!r} and {!r} give the same output and final "
              "state".format(first, second))
    for word in report.errors:
        print("run error on {!r}".format(word))
    print("information-lossless: {}".format("yes" if report.ok else "NO"))
    return 0 if report.ok else 1


def cmd_lz(args):
    word = _get_word(args)
    alphabet = args.alphabet
    if args.op == "encode":
        print(lz.lz_encode(word, alphabet=alphabet))
    elif args.op == "decode":
        print(lz.lz_decode(word, alphabet=alphabet))
    elif args.op == "bits":
        print(lz.lz_bits(word, alphabet=alphabet))
    elif args.op == "ratio":
        print("{:.6f}".format(lz.lz_ratio(word, alphabet=alphabet)))
    return 0


def _emit_stream(stream, args):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(stream.text + "\n")
        print("{}: {} symbols, {} checkpoints -> {}".format(
            stream.name, len(stream.text), len(stream.checkpoints), args.out))
    else:
        print(stream.text)
    return 0


def cmd_seq(args):
    if args.kind == "repeat":
        recipe = sequences.choose_repetition_counts(args.depth,
                                                    seed=args.seed)
        return _emit_stream(recipe.stream, args)
    if args.kind == "buildS":
        stream = sequences.build_S(args.k, args.v, args.nmax)
        return _emit_stream(stream, args)
    if args.kind == "Tn":
        words = (sequences.restricted_T(args.n, args.k) if args.restricted
                 else sequences.enumerate_T(args.n, args.k))
        for w in words:
            print(w)
        return 0
    if args.kind == "random":
        print(sequences.random_word(args.seed, args.length,
                                    alphabet=args.alphabet))
        return 0
    return 2


def _resolve_family(args):
    presets = pumping.preset_families()
    if args.family in presets:
        return presets[args.family]
    machines = [_resolve_machine(m) for m in args.family.split(",")]
    kind = machines[0].mode
    return pumping.PresetFamily(name=args.family, kind=kind,
                                machines=machines)


def cmd_pump(args):
    family = _resolve_family(args)
    if args.op == "fit":
        if family.kind != "endmark":
            print("fit needs an endmark family; {} is plain".format(
                family.name))
            return 2
        fit = pumping.fit_and_verify_endmarked(family.machines[0],
                                               family.head, family.loop,
                                               n_max=args.nmax)
        if fit is None:
            print("no affine fit for {}".format(family.name))
            return 1
        print("fit: from n={} output is x y^n z with |y|={} "
              "(x={!r} z={!r} tail={!r})".format(
                  fit.c, len(fit.y), fit.x, fit.z, fit.y2 + fit.x2))
        return 0
    if args.op == "find":
        word = (sys.stdin.read().strip() if args.stdin else args.word)
        if word is None:
            word = sequences.random_word(args.seed, args.length)
        dec = pumping.find_pumpable(family.machines, word, dmin=args.dmin,
                                    family=family.name)
        if dec is None:
            print("no decomposition found ({} positions)".format(len(word)))
            return 1
        if args.out:
            with open(args.out, "w") as fh:
                pumping.write_decompositions([dec], fh)
        pumping.write_decompositions([dec], sys.stdout)
        return 0
    if args.op == "verify":
        text = _read_text(args.word) if args.word else sys.stdin.read()
        decomps = pumping.read_decompositions(text)
        bad = 0
        presets = pumping.preset_families()
        for dec in decomps:
            fam = presets.get(dec.family or family.name, family)
            ok, detail = pumping.verify_pump_plain(
                fam.machines, dec.word, dec.c, dec.cprime, n_max=args.nmax)
            print("{} cut {} {} on {} symbols: {}".format(
                fam.name, dec.c, dec.cprime, len(dec.word),
                "ok" if ok else "FAILED ({})".format(detail)))
            bad += 0 if ok else 1
        return 1 if bad else 0
    return 2


def cmd_experiment(args):
    ok, series, lines = harness.run_preset(args.preset)
    for line in lines:
        print(line)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, rows in sorted(series.items()):
            path = os.path.join(args.out,
                                "{}-{}.csv".format(args.preset, name))
            with open(path, "w") as fh:
                harness.write_csv(rows, fh)
            print("wrote {}".format(path))
    print("verdict: {}".format("pass" if ok else "FAIL"))
    return 0 if ok else 1


def cmd_zoo(args):
    builtins = zoo.builtin_machines()
    if args.op == "list":
        for name in sorted(builtins):
            spec = builtins[name]
            print("{:<14} {:>4} states  {:>4} rules  mode {}".format(
                name, len(spec.states), len(spec.rules), spec.mode))
        return 0
    if args.name not in builtins:
        print("no builtin {!r}".format(args.name), file=sys.stderr)
        return 2
    sys.stdout.write(format_pdc(builtins[args.name]))
    return 0


# ------------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(
        prog="pdlz",
        description="Pushdown compressors versus LZ78 ({} kernels)".format(
            IMPL))
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("validate", help="check machine files")
    sp.add_argument("files", nargs="+", help="machine files ('-' for stdin)")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("run", help="run a machine on a word")
    sp.add_argument("machine", help="builtin name or machine file")
    sp.add_argument("--input", help="input word")
    sp.add_argument("--stdin", action="store_true",
                    help="read the word from stdin")
    sp.add_argument("--trace", action="count", default=0,
                    help="print a run table (-tt includes stacks)")
    sp.add_argument("--verbose", action="store_true",
                    help="also print final state and stack to stderr")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("ilcheck", help="exhaustive injectivity check")
    sp.add_argument("machine")
    sp.add_argument("--maxlen", type=int, default=8)
    sp.set_defaults(func=cmd_ilcheck)

    sp = sub.add_parser("lz", help="LZ78 coding")
    sp.add_argument("op", choices=("encode", "decode", "ratio", "bits"))
    sp.add_argument("--input", help="input word (bits for decode)")
    sp.add_argument("--stdin", action="store_true")
    sp.add_argument("--alphabet", default="01")
    sp.set_defaults(func=cmd_lz)

    sp = sub.add_parser("seq", help="benchmark sequences")
    seqsub = sp.add_subparsers(dest="kind", required=True)
    q = seqsub.add_parser("repeat", help="nested-repetition stream")
    q.add_argument("--depth", type=int, default=4)
    q.add_argument("--seed", type=int, default=7)
    q.add_argument("--out")
    q = seqsub.add_parser("buildS", help="sectioned palindrome stream")
    q.add_argument("--k", type=int, default=4)
    q.add_argument("--v", type=int, default=4)
    q.add_argument("--nmax", type=int, default=16)
    q.add_argument("--out")
    q = seqsub.add_parser("Tn", help="words with no 1-run of length k")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--restricted", action="store_true",
                   help="only words starting and ending in 0")
    q = seqsub.add_parser("random", help="seeded pseudorandom word")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--length", type=int, required=True)
    q.add_argument("--alphabet", default="01")
    sp.set_defaults(func=cmd_seq)

    sp = sub.add_parser("pump", help="repetition decompositions")
    sp.add_argument("op", choices=("find", "verify", "fit"))
    sp.add_argument("--family", default="unit",
                    help="preset name or comma-separated machines")
    sp.add_argument("--word", help="word (find) or decomposition file "
                    "(verify)")
    sp.add_argument("--stdin", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--length", type=int, default=2048)
    sp.add_argument("--dmin", type=int, default=None)
    sp.add_argument("--nmax", type=int, default=20)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_pump)

    sp = sub.add_parser("experiment", help="run a named comparison")
    sp.add_argument("preset", choices=sorted(harness.PRESETS))
    sp.add_argument("--out", help="directory for CSV series")
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("zoo", help="builtin machines")
    sp.add_argument("op", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_zoo)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (PdcFormatError, ValueError, KeyError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 2
    except (PdcRunError, RuntimeError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
