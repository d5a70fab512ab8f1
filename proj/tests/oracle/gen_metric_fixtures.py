#!/usr/bin/env python3
"""Generates tests/data/metric_fixtures.json.

Every fixture's expected score is computed twice, by two deliberately
different implementations of the published metric definitions:

  Route A: a line-by-line transcription of the reference scorers' algorithm
           (regex-based 13a tokenization, float arithmetic, the exact
           smoothing/averaging control flow).
  Route B: an independent implementation with exact rational arithmetic for
           every precision/recall/F-score, hand-rolled character-loop
           tokenization (no regex), and a different aggregation structure.

A fixture is only frozen when the two routes agree to 1e-9; hand-computed
anchors for a few fixtures are asserted on top.  The C++ implementation
must then reproduce these values to 1e-4.

Stdlib only; regenerate with  python3 tests/oracle/gen_metric_fixtures.py
"""

import json
import math
import os
import re
import sys
from collections import Counter
from fractions import Fraction

# ---------------------------------------------------------------------------
# Route A: transcription of the reference algorithm (floats, regex).
# ---------------------------------------------------------------------------

_13A_RES = [
    (re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])"), r" \1 "),
    (re.compile(r"([^0-9])([\.,])"), r"\1 \2 "),
    (re.compile(r"([\.,])([^0-9])"), r" \1 \2"),
    (re.compile(r"([0-9])(\-)"), r"\1 \2 "),
]


def a_tokenize_13a(line):
    line = line.replace("<skipped>", "")
    line = line.replace("-\n", "")
    line = line.replace("\n", " ")
    if "&" in line:
        line = line.replace("&quot;", '"')
        line = line.replace("&amp;", "&")
        line = line.replace("&lt;", "<")
        line = line.replace("&gt;", ">")
    line = f" {line} "
    for pattern, repl in _13A_RES:
        line = pattern.sub(repl, line)
    return line.split()


def a_char_ngrams(s, n):
    return Counter(s[i:i + n] for i in range(len(s) - n + 1))


def a_token_ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n])
                   for i in range(len(tokens) - n + 1))


_PUNCT = set("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~")


def a_chrf_word_tokens(line):
    tokens = []
    for w in line.split():
        if len(w) > 1 and w[-1] in _PUNCT:
            tokens.append(w[:-1])
            tokens.append(w[-1])
        elif len(w) > 1 and w[0] in _PUNCT:
            tokens.append(w[0])
            tokens.append(w[1:])
        else:
            tokens.append(w)
    return tokens


def a_chrf(hyps, refs, char_order=6, word_order=0, beta=2.0,
           effective_order=True, remove_whitespace=True):
    order = char_order + word_order
    n_hyp = [0] * order
    n_ref = [0] * order
    n_match = [0] * order
    for h, r in zip(hyps, refs):
        hc = "".join(h.split()) if remove_whitespace else h
        rc = "".join(r.split()) if remove_whitespace else r
        for n in range(1, char_order + 1):
            hg = a_char_ngrams(hc, n)
            rg = a_char_ngrams(rc, n)
            n_hyp[n - 1] += sum(hg.values())
            n_ref[n - 1] += sum(rg.values())
            n_match[n - 1] += sum((hg & rg).values())
        if word_order > 0:
            ht = a_chrf_word_tokens(h)
            rt = a_chrf_word_tokens(r)
            for n in range(1, word_order + 1):
                hg = a_token_ngrams(ht, n)
                rg = a_token_ngrams(rt, n)
                i = char_order + n - 1
                n_hyp[i] += sum(hg.values())
                n_ref[i] += sum(rg.values())
                n_match[i] += sum((hg & rg).values())
    factor = beta * beta
    score = 0.0
    effective = 0
    for i in range(order):
        if n_hyp[i] + n_ref[i] == 0:
            if not effective_order:
                effective += 1
            continue
        prec = n_match[i] / n_hyp[i] if n_hyp[i] else 0.0
        rec = n_match[i] / n_ref[i] if n_ref[i] else 0.0
        denom = factor * prec + rec
        if denom > 0:
            score += (1.0 + factor) * prec * rec / denom
        effective += 1
    if effective == 0:
        return 0.0
    return 100.0 * score / effective


def a_my_log(x):
    if x == 0.0:
        return -9999999999.0
    return math.log(x)


def a_bleu(hyps, refs, max_order=4):
    correct = [0] * max_order
    total = [0] * max_order
    sys_len = 0
    ref_len = 0
    for h, r in zip(hyps, refs):
        ht = a_tokenize_13a(h.rstrip())
        rt = a_tokenize_13a(r.rstrip())
        sys_len += len(ht)
        ref_len += len(rt)
        for n in range(1, max_order + 1):
            hg = a_token_ngrams(ht, n)
            rg = a_token_ngrams(rt, n)
            total[n - 1] += sum(hg.values())
            correct[n - 1] += sum((hg & rg).values())
    if not any(correct):
        return 0.0
    precisions = [0.0] * max_order
    smooth = 1.0
    for n in range(1, max_order + 1):
        if total[n - 1] == 0:
            break
        if correct[n - 1] == 0:
            smooth *= 2.0
            precisions[n - 1] = 100.0 / (smooth * total[n - 1])
        else:
            precisions[n - 1] = 100.0 * correct[n - 1] / total[n - 1]
    bp = 1.0
    if sys_len < ref_len:
        bp = math.exp(1.0 - ref_len / sys_len) if sys_len > 0 else 0.0
    # Identity corpora pin to a clean 100; orders with no n-grams at all are
    # vacuous for that purpose.
    if bp == 1.0 and all(
            total[k] == 0 or precisions[k] == 100.0 for k in range(max_order)):
        return 100.0
    return bp * math.exp(sum(a_my_log(p) for p in precisions) / max_order)


# ---------------------------------------------------------------------------
# Route B: independent implementation (exact rationals, loop tokenizers).
# ---------------------------------------------------------------------------

# The whitespace set of str.split(), spelled out.
_WS = set(
    [0x20, 0x85, 0xA0, 0x1680, 0x2028, 0x2029, 0x202F, 0x205F, 0x3000]
    + list(range(0x09, 0x0E)) + list(range(0x1C, 0x20))
    + list(range(0x2000, 0x200B)))


def b_is_space(ch):
    return ord(ch) in _WS


def b_split_ws(s):
    out = []
    cur = []
    for ch in s:
        if b_is_space(ch):
            if cur:
                out.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur))
    return out


def b_rstrip(s):
    end = len(s)
    while end > 0 and b_is_space(s[end - 1]):
        end -= 1
    return s[:end]


def b_in_13a_class(ch):
    o = ord(ch)
    return (0x7B <= o <= 0x7E or 0x5B <= o <= 0x60 or 0x20 <= o <= 0x26
            or 0x28 <= o <= 0x2B or 0x3A <= o <= 0x40 or o == 0x2F)


def b_tokenize_13a(line):
    for old, new in (("<skipped>", ""), ("-\n", ""), ("\n", " ")):
        line = line.replace(old, new)
    if "&" in line:
        for old, new in (("&quot;", '"'), ("&amp;", "&"), ("&lt;", "<"),
                         ("&gt;", ">")):
            line = line.replace(old, new)
    line = " " + line + " "
    t1 = []
    for ch in line:
        if ord(ch) < 0x80 and b_in_13a_class(ch):
            t1 += [" ", ch, " "]
        else:
            t1.append(ch)
    t1 = "".join(t1)
    t2 = []
    i = 0
    while i < len(t1):
        a = t1[i]
        if i + 1 < len(t1):
            b = t1[i + 1]
            if (not (a.isascii() and a.isdigit())) and b in ".,":
                t2 += [a, " ", b, " "]
                i += 2
                continue
        t2.append(a)
        i += 1
    t2 = "".join(t2)
    t3 = []
    i = 0
    while i < len(t2):
        a = t2[i]
        if a in ".," and i + 1 < len(t2):
            b = t2[i + 1]
            if not (b.isascii() and b.isdigit()):
                t3 += [" ", a, " ", b]
                i += 2
                continue
        t3.append(a)
        i += 1
    t3 = "".join(t3)
    t4 = []
    i = 0
    while i < len(t3):
        a = t3[i]
        if a.isascii() and a.isdigit() and i + 1 < len(t3) and t3[i + 1] == "-":
            t4 += [a, " ", "-", " "]
            i += 2
            continue
        t4.append(a)
        i += 1
    return b_split_ws("".join(t4))


def b_ngram_stats(hyp_items, ref_items, n):
    """(hyp_total, ref_total, matches) for order n over item sequences."""
    hyp = Counter(tuple(hyp_items[i:i + n])
                  for i in range(len(hyp_items) - n + 1))
    ref = Counter(tuple(ref_items[i:i + n])
                  for i in range(len(ref_items) - n + 1))
    matches = 0
    for g, c in hyp.items():
        if g in ref:
            matches += min(c, ref[g])
    return sum(hyp.values()), sum(ref.values()), matches


def b_chrf(hyps, refs, char_order=6, word_order=0, beta=2.0,
           effective_order=True, remove_whitespace=True):
    assert beta == int(beta), "integer beta only in fixtures"
    order = char_order + word_order
    stats = [[0, 0, 0] for _ in range(order)]
    for h, r in zip(hyps, refs):
        hc = list("".join(b_split_ws(h)) if remove_whitespace else h)
        rc = list("".join(b_split_ws(r)) if remove_whitespace else r)
        for n in range(1, char_order + 1):
            for k, v in enumerate(b_ngram_stats(hc, rc, n)):
                stats[n - 1][k] += v
        if word_order:
            ht = a_chrf_word_tokens_b(h)
            rt = a_chrf_word_tokens_b(r)
            for n in range(1, word_order + 1):
                for k, v in enumerate(b_ngram_stats(ht, rt, n)):
                    stats[char_order + n - 1][k] += v
    factor = Fraction(int(beta)) ** 2
    total = Fraction(0)
    effective = 0
    for n_hyp, n_ref, n_match in stats:
        if n_hyp + n_ref == 0:
            if not effective_order:
                effective += 1
            continue
        prec = Fraction(n_match, n_hyp) if n_hyp else Fraction(0)
        rec = Fraction(n_match, n_ref) if n_ref else Fraction(0)
        denom = factor * prec + rec
        if denom > 0:
            total += (1 + factor) * prec * rec / denom
        effective += 1
    if effective == 0:
        return 0.0
    return float(100 * total / effective)


def a_chrf_word_tokens_b(line):
    # Independent restatement of the punctuation peeling.
    tokens = []
    for w in b_split_ws(line):
        if len(w) <= 1:
            tokens.append(w)
            continue
        last, first = w[-1], w[0]
        if len(last) == 1 and ord(last) < 0x80 and last in _PUNCT:
            tokens.extend([w[:-1], last])
        elif len(first) == 1 and ord(first) < 0x80 and first in _PUNCT:
            tokens.extend([first, w[1:]])
        else:
            tokens.append(w)
    return tokens


def b_bleu(hyps, refs, max_order=4):
    correct = [0] * max_order
    total = [0] * max_order
    sys_len = 0
    ref_len = 0
    for h, r in zip(hyps, refs):
        ht = b_tokenize_13a(b_rstrip(h))
        rt = b_tokenize_13a(b_rstrip(r))
        sys_len += len(ht)
        ref_len += len(rt)
        for n in range(1, max_order + 1):
            t, _, m = b_ngram_stats(ht, rt, n)
            total[n - 1] += t
            correct[n - 1] += m
    if sum(correct) == 0:
        return 0.0
    precisions = []
    doubling = 1
    for n in range(1, max_order + 1):
        if total[n - 1] == 0:
            precisions.append(Fraction(0))
            continue
        # Orders past a zero total stay at precision zero in the reference
        # flow (the loop breaks); replicate by checking earlier totals.
        if any(total[k] == 0 for k in range(n - 1)):
            precisions.append(Fraction(0))
            continue
        if correct[n - 1] == 0:
            doubling *= 2
            precisions.append(Fraction(100, doubling * total[n - 1]))
        else:
            precisions.append(Fraction(100 * correct[n - 1], total[n - 1]))
    if sys_len >= ref_len:
        bp = 1.0
    elif sys_len == 0:
        bp = 0.0
    else:
        bp = math.exp(1.0 - Fraction(ref_len, sys_len))
    if any(p == 0 for p in precisions):
        geo = 0.0
    else:
        prod = Fraction(1)
        for p in precisions:
            prod *= p
        geo = float(prod) ** (1.0 / max_order)
    if bp == 1.0 and all(
            total[k] == 0 or precisions[k] == 100 for k in range(max_order)):
        return 100.0
    return bp * geo


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

NBSP = " "

CHRF_CASES = [
    ("chrf_identity", ["abc"], ["abc"], {}),
    ("chrf_empty_hyp", [""], ["abc"], {}),
    ("chrf_empty_ref", ["abc"], [""], {}),
    ("chrf_cat_sat", ["cat sat"], ["cat sit"], {}),
    ("chrf_mat_sentence", ["the cat sat on the mat"],
     ["the cat was sitting on the mat"], {}),
    ("chrf_short_identity", ["ab"], ["ab"], {}),
    ("chrf_short_no_effective", ["ab"], ["ab"], {"effective_order": False}),
    ("chrf_keep_whitespace", ["cat sat"], ["cat sit"],
     {"remove_whitespace": False}),
    ("chrf_beta3", ["the cat sat on the mat"],
     ["the cat was sitting on the mat"], {"beta": 3.0}),
    ("chrf_char_order4", ["the cat sat on the mat"],
     ["the cat was sitting on the mat"], {"char_order": 4}),
    ("chrf_word_order2", ["the cat sat on the mat, purring."],
     ["the cat was sitting on the mat, purring."], {"word_order": 2}),
    ("chrf_word_order2_puncts", ["Dupã treilji anji, s-turnã."],
     ["Dupâ trei anji, si turnã."], {"word_order": 2}),
    ("chrf_diacritics", ["Bunã dzua, cum eshti?"], ["Bună dzua, cum ești?"],
     {}),
    ("chrf_nbsp", [f"un{NBSP}om bun"], ["un om bun"], {}),
    ("chrf_corpus3",
     ["Cãndu vidzui muntsãlj", "nu shtiu tsi s-fac", "un om avea doi ficiori"],
     ["Cându vidzui munțâľi", "nu știu și s-fac", "un om avea doi ficiori"],
     {}),
    ("chrf_case_sensitive", ["The Cat"], ["the cat"], {}),
]

BLEU_CASES = [
    ("bleu_identity", ["the cat sat on the mat"], ["the cat sat on the mat"],
     {}),
    ("bleu_mat_sentence", ["the cat sat on the mat"],
     ["the cat was sitting on the mat"], {}),
    ("bleu_three_tokens", ["a b c"], ["a b d"], {}),
    ("bleu_short_identity", ["a b c"], ["a b c"], {}),
    ("bleu_no_match", ["xyz qrs tuv wxy zab"], ["abc def ghi jkl mno"], {}),
    ("bleu_empty_hyp", [""], ["the cat sat on the mat"], {}),
    ("bleu_punct_identity", ["Hello, world! It works."],
     ["Hello, world! It works."], {}),
    ("bleu_punct_variant", ["Hello, world! It works."],
     ["Hello, world! It worked."], {}),
    ("bleu_numbers", ["it costs 5.50 lei today, not 6-7"],
     ["it costs 5.50 lei now, not 6-7"], {}),
    ("bleu_entities", ["&quot;du-te&quot; &amp; vino"], ['"du-te" & vino'],
     {}),
    ("bleu_hyphen_digits", ["pages 12-15 and 3,000 more"],
     ["pages 12-15 and 3,000 others"], {}),
    ("bleu_nbsp", [f"un{NBSP}om bun treatsi"], ["un om bun treatsi"], {}),
    ("bleu_diacritics", ["Cãndu vidzui muntsãlj analtsã"],
     ["Cându vidzui munțâľi analțâ"], {}),
    ("bleu_corpus3",
     ["Cãndu vidzui muntsãlj", "nu shtiu tsi s-fac", "un om avea doi ficiori"],
     ["Cãndu vidzui muntsãlj", "nu shtiu tsi s-fac aclo",
      "un om avea doi ficiori"], {}),
    ("bleu_longer_hyp", ["the quick brown fox jumps over the lazy dog"],
     ["the quick fox jumps over the dog"], {}),
    ("bleu_order2", ["the cat sat on the mat"],
     ["the cat was sitting on the mat"], {"max_order": 2}),
]


def main():
    out = {"chrf": [], "bleu": []}

    for name, hyps, refs, kwargs in CHRF_CASES:
        va = a_chrf(hyps, refs, **kwargs)
        vb = b_chrf(hyps, refs, **kwargs)
        if abs(va - vb) > 1e-9:
            raise AssertionError(f"{name}: routes disagree: {va!r} vs {vb!r}")
        out["chrf"].append({
            "name": name,
            "hyps": hyps,
            "refs": refs,
            "config": kwargs,
            "expected": va,
        })

    for name, hyps, refs, kwargs in BLEU_CASES:
        va = a_bleu(hyps, refs, **kwargs)
        vb = b_bleu(hyps, refs, **kwargs)
        if abs(va - vb) > 1e-9:
            raise AssertionError(f"{name}: routes disagree: {va!r} vs {vb!r}")
        out["bleu"].append({
            "name": name,
            "hyps": hyps,
            "refs": refs,
            "config": kwargs,
            "expected": va,
        })

    # Hand-computed anchors.
    by_name = {f["name"]: f["expected"]
               for kind in out.values() for f in kind}
    assert by_name["chrf_identity"] == 100.0
    assert by_name["chrf_empty_hyp"] == 0.0
    assert by_name["bleu_identity"] == 100.0
    assert by_name["bleu_three_tokens"] == 0.0   # no 4-grams, unsmoothable
    assert by_name["bleu_short_identity"] == 100.0  # identity beats length
    assert by_name["bleu_no_match"] == 0.0
    assert by_name["bleu_empty_hyp"] == 0.0
    assert by_name["chrf_short_identity"] == 100.0
    # cat/sat vs cat/sit by hand: per-order F = 5/6, 3/5, 1/2, 1/3, 0, 0
    # -> 100 * (5/6 + 3/5 + 1/2 + 1/3) / 6 = 100 * 68/180.
    assert abs(by_name["chrf_cat_sat"] - 100.0 * 68.0 / 180.0) < 1e-9
    # identity short pair, eff off: orders 3..6 count as zero F.
    assert abs(by_name["chrf_short_no_effective"] - 100.0 * 2.0 / 6.0) < 1e-9
    assert by_name["chrf_word_order2"] != by_name.get("_", None)

    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.normpath(os.path.join(here, "..", "data",
                                         "metric_fixtures.json"))
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(out, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")
    n = len(out["chrf"]) + len(out["bleu"])
    print(f"wrote {n} fixtures to {path}")
    for kind in ("chrf", "bleu"):
        for f in out[kind]:
            print(f"  {f['name']}: {f['expected']!r}")


if __name__ == "__main__":
    sys.exit(main())
