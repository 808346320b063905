"""Command-line interface.

Exit codes: 0 success / positive verdict, 1 negative verdict (immortal,
complete code), 2 malformed input, 3 precondition failure, 4 oracle cap
exceeded, 5 an output word failed re-verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any

from . import analysis, codes, general_synthesis, generators, oracle
from .core import (
    Alphabet,
    InputError,
    MatrixMorphism,
    PreconditionError,
    SynthesisCertificate,
    Word,
    evaluate,
    is_zero,
    rank,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PRECONDITION, EXIT_CAP, EXIT_VERIFY = range(6)
CAP_ENV = "KILLINGWORDS_ELEMENT_CAP"

# certificate keys whose values are words (or collections of words)
_WORD_KEYS = {"word", "y", "z", "x", "w_q", "block_words", "separators"}


class _Fail(Exception):
    def __init__(self, code: int, doc: dict):
        super().__init__(doc.get("reason", ""))
        self.code = code
        self.doc = doc


# ---------------------------------------------------------------------------
# documents


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def parse_document(doc: Any) -> tuple[str, Any]:
    """Return ("matrices", MatrixMorphism) or ("code", (Alphabet, words))."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InputError("document must be a JSON object with a 'kind'")
    kind = doc["kind"]
    if kind == "matrices":
        alphabet = Alphabet(tuple(doc["alphabet"]))
        gens = doc.get("generators")
        if not isinstance(gens, dict) or set(gens) != set(alphabet.symbols):
            raise InputError("'generators' must map every alphabet symbol to a matrix")
        for s in alphabet.symbols:
            if not all(isinstance(x, int) and not isinstance(x, bool) for row in gens[s] for x in row):
                raise InputError("matrix entries must be integers")
        m = MatrixMorphism(alphabet, tuple(gens[s] for s in alphabet.symbols))
        if "n" in doc and doc["n"] != m.dim:
            raise InputError(f"'n' is {doc['n']} but matrices are {m.dim}x{m.dim}")
        return "matrices", m
    if kind == "nfa":
        alphabet = Alphabet(tuple(doc["alphabet"]))
        n = doc["states"]
        if not isinstance(n, int) or n < 1:
            raise InputError("'states' must be a positive integer")
        delta = doc.get("delta", {})
        mats = []
        for s in alphabet.symbols:
            g = [[0] * n for _ in range(n)]
            for pair in delta.get(s, []):
                p, q = pair
                if not (isinstance(p, int) and isinstance(q, int) and 0 <= p < n and 0 <= q < n):
                    raise InputError(f"transition {pair} out of range")
                g[p][q] = 1
            mats.append(g)
        unknown = set(delta) - set(alphabet.symbols)
        if unknown:
            raise InputError(f"transitions on unknown symbols {sorted(unknown)}")
        return "matrices", MatrixMorphism(alphabet, tuple(mats))
    if kind == "code":
        words = doc.get("words")
        if not isinstance(words, list) or not words:
            raise InputError("'words' must be a nonempty list")
        if "alphabet" in doc:
            alphabet = Alphabet(tuple(doc["alphabet"]))
        else:
            alphabet = Alphabet(tuple(sorted({ch for w in words for ch in w})))
        parsed = [alphabet.parse(w) for w in words]
        if any(not w for w in parsed):
            raise InputError("code words must be nonempty")
        if len(set(parsed)) != len(parsed):
            raise InputError("code words must be distinct")
        return "code", (alphabet, parsed)
    raise InputError(f"unknown document kind {kind!r}")


def morphism_document(m: MatrixMorphism) -> dict:
    return {
        "kind": "matrices",
        "alphabet": list(m.alphabet.symbols),
        "n": m.dim,
        "generators": {s: [list(r) for r in g] for s, g in zip(m.alphabet.symbols, m.generators)},
    }


def nfa_document(m: MatrixMorphism) -> dict:
    delta = {}
    for s, rel in zip(m.alphabet.symbols, m.relations):
        delta[s] = [[p, q] for p in range(m.dim) for q in range(m.dim) if rel.rows[p] >> q & 1]
    return {"kind": "nfa", "alphabet": list(m.alphabet.symbols), "states": m.dim, "delta": delta}


def code_document(code: codes.Code) -> dict:
    return {
        "kind": "code",
        "alphabet": list(code.alphabet.symbols),
        "words": [code.alphabet.symbols_of(w) for w in code.words],
    }


def _jsonable(value: Any, alphabet: Alphabet, word_like: bool = False) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v, alphabet, word_like or k in _WORD_KEYS) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        if word_like and all(isinstance(x, int) for x in value):
            return alphabet.symbols_of(value)
        return [_jsonable(v, alphabet, word_like) for v in value]
    return value


def result_document(verdict: str, alphabet: Alphabet, cert: SynthesisCertificate | None = None, **extra) -> dict:
    doc: dict[str, Any] = {"verdict": verdict}
    if cert is not None:
        doc["word"] = alphabet.symbols_of(cert.word)
        doc["length"] = cert.length
        doc["bound"] = cert.bound
        doc["rank"] = cert.rank
        doc["certificate"] = _jsonable(cert.details, alphabet)
    doc.update(extra)
    return doc


# ---------------------------------------------------------------------------
# loading helpers


def _load(path: str) -> tuple[str, Any]:
    return parse_document(_read_json(path))


def _load_morphism(path: str) -> MatrixMorphism:
    kind, obj = _load(path)
    if kind == "code":
        return codes.flower(_make_code(obj)).morphism
    return obj


def _make_code(obj) -> codes.Code:
    alphabet, words = obj
    return codes.Code(alphabet, tuple(words))


def _load_code(path: str) -> codes.Code:
    kind, obj = _load(path)
    if kind != "code":
        raise InputError("expected a document of kind 'code'")
    return _make_code(obj)


def _verify_rank(m: MatrixMorphism, word: Word, claimed: int) -> None:
    got = rank(evaluate(m, word))
    if got != claimed:
        raise _Fail(EXIT_VERIFY, {"verdict": "verification_failed", "claimed_rank": claimed, "rank": got})


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> tuple[int, dict]:
    kind, obj = _load(args.file)
    if kind == "code":
        try:
            code = _make_code(obj)
        except codes.NotACodeError as exc:
            raise InputError(f"not a code: {exc}") from exc
        return EXIT_OK, {"verdict": "valid", "kind": "code", "words": len(code.words),
                         "k": code.k_code, "m": code.m_code}
    return EXIT_OK, {"verdict": "valid", "kind": "matrices", "n": obj.dim,
                     "letters": len(obj.alphabet), "boolean": obj.is_boolean()}


def cmd_jsr(args) -> tuple[int, dict]:
    m = _load_morphism(args.file)
    verdict = analysis.check_jsr_le_one(m)
    doc = {"verdict": "ok" if verdict.ok else "exponential_growth",
           "certificate": verdict.as_dict(m)}
    return (EXIT_OK if verdict.ok else EXIT_PRECONDITION), doc


def cmd_mortal(args) -> tuple[int, dict]:
    m = _load_morphism(args.file)
    mortal = analysis.mortality(m)
    return (EXIT_OK if mortal else EXIT_NEGATIVE), {"verdict": "mortal" if mortal else "immortal"}


def cmd_synthesize(args) -> tuple[int, dict]:
    m = _load_morphism(args.file)
    word, cert = general_synthesis.synthesize(m)
    if args.verify:
        _verify_rank(m, word, cert.rank)
    verdict = "mortal" if cert.rank == 0 else "min_rank"
    return EXIT_OK, result_document(verdict, m.alphabet, cert)


def cmd_kill(args) -> tuple[int, dict]:
    m = _load_morphism(args.file)
    word, cert = general_synthesis.kill(m)
    if args.verify and not is_zero(evaluate(m, word)):
        raise _Fail(EXIT_VERIFY, {"verdict": "verification_failed", "reason": "product is not zero"})
    return EXIT_OK, result_document("mortal", m.alphabet, cert)


def cmd_flower(args) -> tuple[int, dict]:
    code = _load_code(args.file)
    return EXIT_OK, nfa_document(codes.flower(code).morphism)


def cmd_uncompletable(args) -> tuple[int, dict]:
    code = _load_code(args.file)
    word, cert = codes.uncompletable_word(code)
    if word is None:
        return EXIT_NEGATIVE, {"verdict": "complete", "word": None, "bound": cert.bound,
                               "certificate": cert.details}
    if args.verify and not codes.is_uncompletable(code, word):
        raise _Fail(EXIT_VERIFY, {"verdict": "verification_failed", "reason": "word is completable"})
    cert.details.pop("bounds", None)
    return EXIT_OK, result_document("uncompletable", code.alphabet, cert,
                                    k=code.k_code, m=code.m_code)


def cmd_iscode(args) -> tuple[int, dict]:
    kind, obj = _load(args.file)
    if kind != "code":
        raise InputError("expected a document of kind 'code'")
    alphabet, words = obj
    ok, amb = codes.sardinas_patterson(words)
    if ok:
        return EXIT_OK, {"verdict": "code"}
    return EXIT_PRECONDITION, {
        "verdict": "not_a_code",
        "word": alphabet.symbols_of(amb.word),
        "factorizations": [[alphabet.symbols_of(x) for x in f] for f in (amb.left, amb.right)],
    }


def cmd_gen(args) -> tuple[int, dict]:
    if args.family == "primes":
        return EXIT_OK, morphism_document(generators.primes_family(args.m).morphism)
    if args.family == "ufa":
        m = generators.random_ufa(args.n, args.density, args.seed, letters=args.letters,
                                  strongly_connected=args.strongly_connected)
        return EXIT_OK, morphism_document(m)
    code = generators.random_code(args.alphabet_size, args.max_words, args.max_len, args.seed)
    return EXIT_OK, code_document(code)


def _element_cap(args) -> int:
    if args.element_cap is not None:
        return args.element_cap
    return int(os.environ.get(CAP_ENV, oracle.DEFAULT_ELEMENT_CAP))


def cmd_oracle(args) -> tuple[int, dict]:
    if args.task == "uncompletable":
        code = _load_code(args.file)
        max_len = args.max_len or 12
        w = oracle.shortest_uncompletable_brute(code, max_len)
        if w is None:
            return EXIT_NEGATIVE, {"verdict": "none_found", "max_len": max_len}
        return EXIT_OK, {"verdict": "uncompletable", "word": code.alphabet.symbols_of(w), "length": len(w)}
    m = _load_morphism(args.file)
    if args.task == "kill":
        w = oracle.shortest_killing_word_bfs(m, args.max_len)
        if w is None:
            return EXIT_NEGATIVE, {"verdict": "no_killing_word"}
        return EXIT_OK, {"verdict": "mortal", "word": m.alphabet.symbols_of(w), "length": len(w)}
    table = oracle.enumerate_monoid(m, _element_cap(args), args.max_len or oracle.DEFAULT_LEN_CAP)
    doc = {"verdict": "closed" if table.complete else "cap_exceeded", "elements": len(table),
           "min_rank": table.min_rank, "complete": table.complete}
    return (EXIT_OK if table.complete else EXIT_CAP), doc


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="quiet", action="store_false", default=False, help="print a JSON result (default)")
    out.add_argument("--quiet", dest="quiet", action="store_true", default=False, help="print nothing; exit code only")
    common.add_argument("--verify", dest="verify", action="store_true", default=True,
                        help="re-evaluate output words before printing (default)")
    common.add_argument("--no-verify", dest="verify", action="store_false")
    common.add_argument("--timings", action="store_true", help="add timings_ms to the result")

    p = argparse.ArgumentParser(prog="killingwords", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    for name, func, help_ in [
        ("validate", cmd_validate, "parse and check an instance document"),
        ("jsr", cmd_jsr, "test joint spectral radius <= 1"),
        ("mortal", cmd_mortal, "decide whether the zero matrix is a product"),
        ("kill", cmd_kill, "synthesize a killing word"),
        ("minrank", cmd_synthesize, "synthesize a minimum-rank word"),
        ("synthesize", cmd_synthesize, "synthesize a minimum-rank word"),
        ("flower", cmd_flower, "flower automaton of a code as an nfa document"),
        ("uncompletable", cmd_uncompletable, "synthesize an uncompletable word of a code"),
        ("iscode", cmd_iscode, "Sardinas-Patterson test"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="instance document, or - for stdin")
        sp.set_defaults(func=func)

    gen = sub.add_parser("gen", help="emit generated instance documents")
    gsub = gen.add_subparsers(dest="family", required=True)
    gp = gsub.add_parser("primes", parents=[common])
    gp.add_argument("--m", type=int, required=True)
    gu = gsub.add_parser("ufa", parents=[common])
    gu.add_argument("--n", type=int, required=True)
    gu.add_argument("--density", type=float, required=True)
    gu.add_argument("--seed", type=int, default=0)
    gu.add_argument("--letters", type=int, default=2)
    gu.add_argument("--strongly-connected", action="store_true")
    gc = gsub.add_parser("code", parents=[common])
    gc.add_argument("--alphabet-size", type=int, default=2)
    gc.add_argument("--max-words", type=int, default=4)
    gc.add_argument("--max-len", type=int, default=4)
    gc.add_argument("--seed", type=int, default=0)
    for g in (gp, gu, gc):
        g.set_defaults(func=cmd_gen)

    orc = sub.add_parser("oracle", parents=[common], help="brute-force cross-checks")
    orc.add_argument("task", choices=["kill", "monoid", "uncompletable"])
    orc.add_argument("file")
    orc.add_argument("--max-len", type=int, default=None)
    orc.add_argument("--element-cap", type=int, default=None,
                     help=f"monoid element cap (env {CAP_ENV}, default {oracle.DEFAULT_ELEMENT_CAP})")
    orc.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code, doc = args.func(args)
    except _Fail as exc:
        code, doc = exc.code, exc.doc
    except InputError as exc:
        code, doc = EXIT_INPUT, {"verdict": "error", "reason": "malformed_input", "message": str(exc)}
    except (KeyError, TypeError, ValueError) as exc:
        code, doc = EXIT_INPUT, {"verdict": "error", "reason": "malformed_input", "message": repr(exc)}
    except PreconditionError as exc:
        code, doc = EXIT_PRECONDITION, {"verdict": "error", "reason": exc.reason,
                                        "message": str(exc), "details": exc.details}
    except generators.GenerationError as exc:
        code, doc = EXIT_PRECONDITION, {"verdict": "error", "reason": "generation_failed", "message": str(exc)}
    if getattr(args, "timings", False):
        doc["timings_ms"] = {"total": round(1000 * (time.perf_counter() - start), 3)}
    if not args.quiet:
        json.dump(doc, sys.stdout, sort_keys=True, default=list)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
