"""Command-line front end: ``negabase <verb> [options] operands``.

Exit status is 0 on success, 1 on a usage error and 2 on a domain error
(for instance an input word that is not an admissible expansion).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arithmetic, integers
from .dwords import WordSyntaxError, format_word, is_expansion, parse_expansion
from .dwords import format_expansion
from .expander import DomainError, evaluate, expand_real
from .pbase import BaseSyntaxError, InvalidBase, parse_base
from .plotting import plot_points, precision, write_points_csv
from .qfield import ParseError, format_element, parse_element, to_decimal

USAGE_ERROR, DOMAIN_ERROR = 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--base", default="1,1,-",
                        help="m,n,- for x^2-mx-n or m,n,+ for x^2-mx+n (default 1,1,-)")
    common.add_argument("--sign", choices=("neg", "pos"), default="neg",
                        help="numeration in base -beta (neg) or beta (pos)")
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = _Parser(prog="negabase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="expansion of a field element")
    p.add_argument("value", nargs="+", help='"a b d" or "(a+b*beta)/d"; put negatives after --')
    p = sub.add_parser("eval", parents=[common], help="exact value of a digit word")
    p.add_argument("word")
    for verb in ("add", "sub", "mul"):
        p = sub.add_parser(verb, parents=[common], help=f"{verb} two expansions")
        p.add_argument("x")
        p.add_argument("y")
    p = sub.add_parser("normalize", parents=[common], help="expansion of a raw digit string")
    p.add_argument("word")
    p = sub.add_parser("lscan", parents=[common], help="largest fractional part of x op y")
    p.add_argument("--op", choices=("add", "mul"), default="add")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--workers", type=int, default=1)
    for verb in ("integers", "distances"):
        p = sub.add_parser(verb, parents=[common], help=f"{verb} of the integer set")
        p.add_argument("--digits", type=int, default=6, help="maximal number of digits")
        p.add_argument("--nonnegative", action="store_true")
        p.add_argument("--csv", metavar="PATH", help="write the points as CSV")
        p.add_argument("--plot", metavar="PATH", help="draw the points (svg/png/pdf)")
    p = sub.add_parser("phiword", parents=[common], help="prefix of the substitution fixed point")
    p.add_argument("length", type=int)
    p = sub.add_parser("coincide", parents=[common],
                       help="compare (-tau)- and tau^2-integers on [0, tau^E]")
    p.add_argument("bound_exponent", type=int)
    p.add_argument("--plot", metavar="PATH")
    sub.add_parser("refwords", parents=[common], help="reference words of the base")
    return parser


def _fmt(e, args):
    # bases with digits above 9 always print comma separated
    return format_expansion(e, comma=args.base.alphabet_max_neg > 9)


def _parse_word(text, args):
    negative = text.startswith("-")
    if negative:
        if args.sign != "pos":
            raise UsageError(f"unexpected '-' in {text!r}; base -beta words carry no sign")
        text = text[1:]
    return negative, parse_expansion(text, args.base.alphabet_max_neg)


def _admissible(text, args):
    negative, e = _parse_word(text, args)
    if not is_expansion(e, args.base, args.sign):
        raise DomainError(f"{text!r} is not an admissible expansion in this base")
    return negative, e


def _signed_value(text, args):
    negative, e = _admissible(text, args)
    value = evaluate(e, args.base, args.sign)
    return -value if negative else value


def _expand(value, args):
    """Expansion text and Expansion; base beta prints negatives as ``-<|x|>``."""
    if args.sign == "pos" and value.sign() < 0:
        e = expand_real(-value, args.base, "pos")
        return "-" + _fmt(e, args), e
    e = expand_real(value, args.base, args.sign)
    return _fmt(e, args), e


def _result(text, e, extra=None):
    frac = e.fractional_length()
    data = {"result": text, "finite": e.is_finite,
            "fractional_length": None if frac == float("inf") else frac}
    data.update(extra or {})
    return text, data


def _run(args):
    base, sign = args.base, args.sign
    verb = args.verb
    if verb == "expand":
        value = parse_element(" ".join(args.value), base)
        text, e = _expand(value, args)
        return _result(text, e, {"value": value.to_json()})
    if verb == "eval":
        value = _signed_value(args.word, args)
        return format_element(value), {"value": value.to_json(),
                                       "decimal": str(to_decimal(value, precision()))}
    if verb in ("add", "sub", "mul"):
        if sign == "neg" and verb == "add":
            _, x = _admissible(args.x, args)
            _, y = _admissible(args.y, args)
            if not (x.is_finite and y.is_finite):
                raise DomainError("add takes finite expansions")
            if base.is_minus:
                e = arithmetic.add_neg(x, y, base)
            else:
                e = arithmetic.field_op(x, y, base, "add")
            return _result(_fmt(e, args), e)
        a, b = _signed_value(args.x, args), _signed_value(args.y, args)
        value = {"add": a + b, "sub": a - b, "mul": a * b}[verb]
        return _result(*_expand(value, args))
    if verb == "normalize":
        negative, e = _parse_word(args.word, args)
        raw = arithmetic.RawDigitString.from_expansion(e)
        if sign == "neg":
            out = arithmetic.normalize_neg(raw, base)
        else:
            out = arithmetic.normalize_pos_tau(raw, base)
        text = ("-" if negative else "") + _fmt(out, args)
        return _result(text, out)
    if verb == "lscan":
        report = arithmetic.l_scan(base, sign, args.op, args.max_len, args.workers)
        data = report.to_json()
        return json.dumps(data), data
    if verb in ("integers", "distances"):
        s = integers.enumerate_integers(base, sign, args.digits, nonnegative=args.nonnegative)
        if args.csv:
            write_points_csv(s, args.csv)
        if args.plot:
            plot_points(s, args.plot)
        if verb == "integers":
            rows = []
            for x, e in zip(s.points, s.expansions):
                mark = "-" if sign == "pos" and x.sign() < 0 else ""
                rows.append((mark + _fmt(e, args), format_element(x)))
            text = "\n".join(f"{w}\t{v}" for w, v in rows)
            return text, {"points": [{"expansion": w, "value": x.to_json()}
                                     for (w, _), x in zip(rows, s.points)]}
        try:
            word = integers.distance_word(s)
        except integers.GapError:
            gaps = [format_element(g) for g in integers.gaps(s)]
            return " ".join(gaps), {"gaps": gaps}
        return str(word), {"word": str(word), "letters": list(word.letters)}
    if verb == "phiword":
        word = integers.phi_fixed_point(args.length)
        return str(word), {"word": str(word), "letters": list(word.letters)}
    if verb == "coincide":
        report = integers.coincidence_check(args.bound_exponent)
        if args.plot:
            from .pbase import TAU
            s = integers.enumerate_integers(TAU, "neg", 1, nonnegative=True)
            s.points = report.neg_points
            s.expansions = [expand_real(x, TAU, "neg") for x in report.neg_points]
            plot_points(s, args.plot, title=f"(-tau)-integers on [0, tau^{args.bound_exponent}]")
        data = report.to_json()
        text = (f"equal={str(report.equal).lower()} points={len(report.neg_points)}\n"
                f"neg {report.neg_word}\npos {report.pos_word}")
        return text, data
    if verb == "refwords":
        refs = base.reference_words()
        data = {"dstar_pos": format_word(refs.dstar_pos), "d_l": format_word(refs.d_l),
                "dstar_r": format_word(refs.dstar_r)}
        return "\n".join(f"{k} {v}" for k, v in data.items()), data
    raise UsageError(f"unknown verb {verb!r}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.base = parse_base(args.base)
        text, data = _run(args)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return USAGE_ERROR
    except (WordSyntaxError, ParseError, BaseSyntaxError) as exc:
        print(f"negabase: {exc}", file=stderr)
        return USAGE_ERROR
    except (DomainError, InvalidBase, ZeroDivisionError) as exc:
        print(f"negabase: {exc}", file=stderr)
        return DOMAIN_ERROR
    if getattr(args, "json", False) or args.verb == "lscan":
        print(json.dumps(data, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
