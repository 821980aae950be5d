"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 an Unknown verdict,
3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .components import identity_component, pi0_via_cohomology, pi0_via_glue
from .exact import FieldMismatch
from .isogeny import classify_corpus, decide_imaginary_isogeny, normal_form_1d
from .lattice import IncompatibleLattices, InvalidLattice, embed, split
from .manifest import CorpusManifest
from .polarization import (
    decide_polarizable,
    dual_lattice,
    verify_certificate,
    verify_polarization,
)
from .randgen import gen_random
from .textio import LatticeDocument, ParseError, ValidationError, emit, parse, parse_field

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class InputError(Exception):
    """A document failed to parse or validate; carries the file name."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_documents(paths: Sequence[str]) -> list[LatticeDocument]:
    docs = []
    if not paths:
        return parse(sys.stdin.read())
    for path in paths:
        if path == "-":
            docs.extend(parse(sys.stdin.read()))
            continue
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            docs.extend(parse(text))
        except (ParseError, ValidationError) as exc:
            raise InputError(f"{path}: {exc}") from None
    return docs


def _lattices(docs: list[LatticeDocument], command: str) -> list[LatticeDocument]:
    out = [doc for doc in docs if doc.lattice is not None]
    if len(out) != len(docs):
        raise UsageError(f"{command} expects lattice documents")
    if not out:
        raise UsageError(f"{command}: no documents given")
    return out


def _with_prefix(docs: list[LatticeDocument], doc: LatticeDocument, text: str) -> str:
    return text if len(docs) == 1 else f"{doc.name}: {text}"


# --------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    docs = _read_documents(args.files)
    for doc in docs:
        print(f"{doc.name}: ok")
    return EXIT_OK


def cmd_split(args) -> int:
    docs = _read_documents(args.files)
    out = []
    for doc in docs:
        D = doc.descended if doc.descended is not None else embed(doc.lattice)
        L, _ = split(D)
        out.append(LatticeDocument(doc.name, lattice=L))
    sys.stdout.write(emit(out))
    return EXIT_OK


def cmd_components(args) -> int:
    docs = _lattices(_read_documents(args.files), "components")
    for doc in docs:
        pi0 = pi0_via_glue(doc.lattice)
        if pi0 != pi0_via_cohomology(doc.lattice):
            raise AssertionError("component group computations disagree")
        print(_with_prefix(docs, doc, pi0.describe()))
        if args.identity:
            print(_with_prefix(docs, doc, identity_component(doc.lattice).describe()))
    return EXIT_OK


def cmd_polarize_verify(args) -> int:
    docs = _lattices(_read_documents(args.files), "polarize verify")
    status = EXIT_OK
    for doc in docs:
        if doc.S is None:
            raise UsageError(f"{doc.name}: document has no 'S = ...' line")
        ok = verify_polarization(doc.lattice, doc.S)
        print(_with_prefix(docs, doc, "polarization: valid" if ok else "polarization: invalid"))
        if not ok:
            status = EXIT_INVALID
    return status


def cmd_polarize_find(args) -> int:
    docs = _lattices(_read_documents(args.files), "polarize find")
    out = []
    status = EXIT_OK
    for doc in docs:
        cert = decide_polarizable(doc.lattice, budget=args.budget, seed=args.seed)
        if cert.verdict != "unknown" and not verify_certificate(doc.lattice, cert):
            raise AssertionError(f"{doc.name}: certificate failed re-verification")
        out.append(
            LatticeDocument(
                doc.name,
                lattice=doc.lattice,
                S=cert.S.S if cert.S is not None else None,
                Q=cert.Q,
                verdict=cert.verdict,
            )
        )
        if cert.verdict == "unknown":
            status = EXIT_UNKNOWN
    sys.stdout.write(emit(out))
    return status


def cmd_dual(args) -> int:
    docs = _lattices(_read_documents(args.files), "dual")
    out = [LatticeDocument(f"{doc.name}.dual", lattice=dual_lattice(doc.lattice)[0]) for doc in docs]
    sys.stdout.write(emit(out))
    return EXIT_OK


def cmd_isogeny(args) -> int:
    docs = _lattices(_read_documents(args.files), "isogeny")
    if len(docs) != 2:
        raise UsageError(f"isogeny needs exactly two lattices, got {len(docs)}")
    a, b = docs
    dec = decide_imaginary_isogeny(a.lattice, b.lattice, budget=args.budget)
    print(f"pair: {a.name} {b.name}")
    print(f"verdict = {dec.verdict}")
    if dec.witness is not None:
        print(f"U = {dec.witness.U.tolist()}")
    if dec.certificate:
        print(f"certificate = {dec.certificate}")
    if dec.report:
        print(f"# {dec.report}")
    return EXIT_UNKNOWN if dec.verdict == "unknown" else EXIT_OK


def cmd_normal_form(args) -> int:
    docs = _lattices(_read_documents(args.files), "normal-form")
    for doc in docs:
        if doc.g != 1:
            raise UsageError(f"{doc.name}: normal forms are defined for g = 1 only")
        print(_with_prefix(docs, doc, f"normal form: {normal_form_1d(doc.lattice)}"))
    return EXIT_OK


def cmd_classify(args) -> int:
    docs = _lattices(_read_documents(args.files), "classify-corpus")
    result = classify_corpus([doc.lattice for doc in docs], budget=args.budget)
    print("# classes merge only on certified yes; the partition refines the true one")
    for k, cls_ in enumerate(result.classes):
        print(f"class {k}: {' '.join(docs[i].name for i in cls_)}")
    for i, j in result.unknown_pairs:
        print(f"unknown: {docs[i].name} {docs[j].name}")
    if args.manifest:
        manifest = CorpusManifest.from_classification(docs, result, args.seed, args.budget)
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json())
    return EXIT_UNKNOWN if result.unknown_pairs else EXIT_OK


def _field_arg(text: str) -> int | None:
    if text.isdigit():
        text = f"Q(sqrt {text})"
    try:
        return parse_field(text, 0, 1)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc).split(": ", 1)[1]) from None


def cmd_gen_random(args) -> int:
    if not 1 <= args.g <= 6:
        raise UsageError("gen-random supports 1 <= g <= 6")
    sys.stdout.write(emit(gen_random(args.g, args.field, args.seed, args.count)))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="realab", description="Real lattices of real abelian varieties.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, files=True):
        sp = sub.add_parser(name, help=help_text)
        if files:
            sp.add_argument("files", nargs="*", help="input files ('-' or none for stdin)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=2000)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "parse and validate documents")
    add("split", cmd_split, "split normal form of descended or lattice documents")
    add("components", cmd_components, "component group of the real points").add_argument(
        "--identity", action="store_true", help="also describe the identity component"
    )
    pol = sub.add_parser("polarize", help="verify or find polarizations")
    polsub = pol.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func in (("verify", cmd_polarize_verify), ("find", cmd_polarize_find)):
        sp = polsub.add_parser(name)
        sp.add_argument("files", nargs="*")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=200)
        sp.set_defaults(func=func)
    add("dual", cmd_dual, "dual lattice in split form")
    add("isogeny", cmd_isogeny, "decide imaginary isogeny between two lattices")
    add("normal-form", cmd_normal_form, "one-dimensional normal form")
    add("classify-corpus", cmd_classify, "isogeny classes of a corpus").add_argument(
        "--manifest", help="write a JSON manifest to this path"
    )
    gen = add("gen-random", cmd_gen_random, "generate random lattices", files=False)
    gen.add_argument("--g", type=int, required=True)
    gen.add_argument("--field", type=_field_arg, default=None, help="Q, Q(sqrt d) or d")
    gen.add_argument("--count", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"realab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ParseError, ValidationError, InvalidLattice) as exc:
        print(f"realab: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FieldMismatch, IncompatibleLattices) as exc:
        print(f"realab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
