"""Descriptor documents: JSON trees with a ``kind`` key per node.

Every object with a ``to_doc`` method round-trips through the matching
``*_from_doc`` loader. Rationals are ``"num/den"`` strings.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import bits, closure, martingale as mg, scan
from .constructions import bpp, prop_s
from .constructions.polynomial import PolynomialNat
from .errors import DescriptorError
from .rational import parse_q


def _need(doc, key):
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise DescriptorError(f"document is missing {key!r}: {doc!r}") from None


def martingale_from_doc(doc) -> mg.Martingale:
    kind = _need(doc, "kind")
    if kind == "constant":
        return mg.Constant(parse_q(doc.get("c", "1/1")))
    if kind == "stake-table":
        return mg.StakeTable({x: parse_q(v) for x, v in _need(doc, "values").items()},
                             int(_need(doc, "depth")))
    if kind == "favor-bit":
        return mg.FavorBit(doc.get("pattern", "0"), parse_q(doc.get("factor", "3/2")),
                           int(doc.get("start", 0)), doc.get("stop"),
                           parse_q(doc.get("initial", "1/1")))
    if kind == "delayed":
        return mg.Delayed(martingale_from_doc(_need(doc, "child")), int(_need(doc, "n")))
    if kind == "weighted-sum":
        return mg.WeightedSum(tuple(martingale_from_doc(c) for c in _need(doc, "children")))
    if kind == "savings":
        return mg.Savings(martingale_from_doc(_need(doc, "child")))
    if kind == "averaging":
        return closure.AveragingMartingale(strategy_from_doc(doc))
    if kind == "bin":
        return bpp.BinMartingale(alg_from_doc(_need(doc, "alg")))
    if kind == "predictor":
        return bpp.PredictorMartingale(alg_from_doc(_need(doc, "alg")))
    raise DescriptorError(f"unknown martingale kind {kind!r}")


def polynomial_from_doc(doc) -> PolynomialNat:
    if isinstance(doc, list):
        return PolynomialNat(tuple(doc))
    return PolynomialNat(tuple(_need(doc, "coefficients")))


def permutation_from_doc(doc) -> scan.Permutation:
    kind = _need(doc, "kind")
    if kind == "identity":
        return scan.Identity()
    if kind == "pair-swap":
        return scan.PairSwap()
    if kind == "table":
        pairs = {int(a): int(b) for a, b in _need(doc, "pairs")}
        return scan.TablePermutation.from_pairs(pairs, doc.get("size"))
    if kind == "block-rearrangement":
        return bpp.BlockRearrangement(polynomial_from_doc(_need(doc, "p")))
    if kind == "dishonest":
        return prop_s.DishonestPermutation()
    raise DescriptorError(f"unknown permutation kind {kind!r}")


def scanner_from_doc(doc) -> scan.ScanningFunction:
    kind = _need(doc, "kind")
    if kind == "from-permutation":
        return scan.FromPermutation(permutation_from_doc(_need(doc, "permutation")))
    if kind == "table":
        return scan.TableScanner({a: int(q) for a, q in _need(doc, "table").items()},
                                 int(_need(doc, "depth")))
    if kind == "rule":
        return scan.RuleScanner(_need(doc, "name"))
    raise DescriptorError(f"unknown scanner kind {kind!r}")


def bound_from_doc(doc):
    """A filling bound g: an explicit polynomial or the exact bound of a permutation."""
    kind = doc.get("kind", "polynomial") if isinstance(doc, dict) else "polynomial"
    if kind == "polynomial":
        return polynomial_from_doc(doc)
    if kind == "filling-bound":
        return scan.FillingBound(permutation_from_doc(_need(doc, "permutation")))
    raise DescriptorError(f"unknown bound kind {kind!r}")


def strategy_from_doc(doc, budget: int = closure.DEFAULT_BUDGET) -> closure.BettingStrategy:
    return closure.BettingStrategy(
        scanner_from_doc(_need(doc, "scanner")),
        martingale_from_doc(_need(doc, "martingale")),
        bound_from_doc(_need(doc, "g")),
        int(doc.get("certified_to", 6)),
        budget,
    )


def oracle_from_doc(doc) -> bits.SequenceOracle:
    kind = _need(doc, "kind")
    if kind == "explicit-prefix":
        return bits.ExplicitPrefix(doc.get("bits", ""), doc.get("default", "0"))
    if kind == "periodic":
        return bits.Periodic(_need(doc, "pattern"))
    if kind == "pseudorandom":
        return bits.Pseudorandom(int(doc.get("seed", 0)))
    if kind == "permuted":
        return bits.Permuted(oracle_from_doc(_need(doc, "base")),
                             permutation_from_doc(_need(doc, "permutation")))
    if kind == "interleaved":
        return bpp.Interleaved(doc.get("target", "parity"), oracle_from_doc(_need(doc, "b")))
    if kind == "leftmost-path":
        return prop_s.LeftmostPath(martingale_from_doc(_need(doc, "martingale")))
    raise DescriptorError(f"unknown sequence kind {kind!r}")


def alg_from_doc(doc) -> bpp.SyntheticBPP:
    if doc.get("kind", "synthetic-bpp") != "synthetic-bpp":
        raise DescriptorError(f"expected a synthetic-bpp document, got {doc.get('kind')!r}")
    p = doc.get("p")
    return bpp.SyntheticBPP(
        bpp.DEFAULT_P if p is None else polynomial_from_doc(p),
        doc.get("rule", "keyed"),
        doc.get("bad_count"),
        int(doc.get("seed", 0)),
        doc.get("target", "parity"),
    )


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise DescriptorError(f"{path}: not a valid document ({err})") from None
