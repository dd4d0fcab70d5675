#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from CPython's unicodedata.

The tokenizer's Unicode behaviour (category tests, case folding, canonical
decomposition) is pinned to the Unicode snapshot of the Python interpreter
that generated the tables, the same snapshot the test fixtures were produced
with. Rerun only together with the fixture generators.

    python3 tools/gen_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata

MAX_CP = 0x110000
SURROGATES = range(0xD800, 0xE000)


def cps():
    for cp in range(MAX_CP):
        if cp not in SURROGATES:
            yield cp


def ranges_of(pred):
    out = []
    start = None
    prev = None
    for cp in cps():
        if pred(cp):
            if start is None:
                start = cp
            prev = cp
        else:
            if start is not None:
                out.append((start, prev))
                start = None
    if start is not None:
        out.append((start, prev))
    return out


def cat(cp):
    return unicodedata.category(chr(cp))


def is_control_removed(cp):
    # BERT clean_text: category C* is dropped, except \t \n \r.
    if cp in (0x09, 0x0A, 0x0D):
        return False
    return cat(cp).startswith("C")


def is_bert_whitespace(cp):
    if cp in (0x09, 0x0A, 0x0D):
        return True
    return cat(cp) in ("Zs", "Zl", "Zp")


def is_general_whitespace(cp):
    # Matches Python str.isspace (whitespace for the whitespace mechanism).
    return chr(cp).isspace()


def is_punct(cp):
    if 33 <= cp <= 47 or 58 <= cp <= 64 or 91 <= cp <= 96 or 123 <= cp <= 126:
        return True
    return cat(cp).startswith("P")


def full_canonical_decomposition(cp):
    """Recursively expanded canonical (non-compatibility) decomposition."""
    if 0xAC00 <= cp <= 0xD7A3:
        return None  # Hangul is decomposed algorithmically at runtime.
    d = unicodedata.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    parts = [int(x, 16) for x in d.split()]
    out = []
    for p in parts:
        sub = full_canonical_decomposition(p)
        out.extend(sub if sub else [p])
    return out


def emit_ranges(name, rngs):
    print(f"inline constexpr CpRange {name}[] = {{")
    line = []
    for lo, hi in rngs:
        line.append(f"{{0x{lo:X},0x{hi:X}}}")
        if len(line) == 8:
            print("    " + ",".join(line) + ",")
            line = []
    if line:
        print("    " + ",".join(line) + ",")
    print("};")
    print()


def main():
    py = sys.version.split()[0]
    uv = unicodedata.unidata_version

    nfd = {}
    for cp in cps():
        d = full_canonical_decomposition(cp)
        if d:
            assert "".join(chr(x) for x in d) == unicodedata.normalize(
                "NFD", chr(cp)
            ), hex(cp)
            nfd[cp] = d

    lower_simple = []
    lower_special = []
    for cp in cps():
        low = chr(cp).lower()
        if low == chr(cp):
            continue
        if len(low) == 1:
            lower_simple.append((cp, ord(low)))
        else:
            lower_special.append((cp, [ord(c) for c in low]))

    print("// Generated by tools/gen_unicode_tables.py")
    print(f"// CPython {py}, Unicode {uv}. Do not edit by hand.")
    print()
    emit_ranges("kControlRemoved", ranges_of(is_control_removed))
    emit_ranges("kBertWhitespace", ranges_of(is_bert_whitespace))
    emit_ranges("kWhitespace", ranges_of(is_general_whitespace))
    emit_ranges("kPunctuation", ranges_of(is_punct))
    emit_ranges("kMarkNonspacing", ranges_of(lambda cp: cat(cp) == "Mn"))
    emit_ranges("kMark", ranges_of(lambda cp: cat(cp).startswith("M")))
    emit_ranges("kLetter", ranges_of(lambda cp: cat(cp).startswith("L")))
    emit_ranges("kDigit", ranges_of(lambda cp: cat(cp) == "Nd"))

    print(f"inline constexpr CpPair kLowerSimple[] = {{")
    line = []
    for cp, low in lower_simple:
        line.append(f"{{0x{cp:X},0x{low:X}}}")
        if len(line) == 8:
            print("    " + ",".join(line) + ",")
            line = []
    if line:
        print("    " + ",".join(line) + ",")
    print("};")
    print()

    print("inline constexpr CpSeq kLowerSpecial[] = {")
    for cp, seq in lower_special:
        assert len(seq) <= 3
        padded = seq + [0] * (3 - len(seq))
        vals = ",".join(f"0x{x:X}" for x in padded)
        print(f"    {{0x{cp:X},{len(seq)},{{{vals}}}}},")
    print("};")
    print()

    flat = []
    entries = []
    for cp in sorted(nfd):
        seq = nfd[cp]
        entries.append((cp, len(flat), len(seq)))
        flat.extend(seq)

    print("inline constexpr NfdEntry kNfdEntries[] = {")
    line = []
    for cp, off, n in entries:
        line.append(f"{{0x{cp:X},{off},{n}}}")
        if len(line) == 6:
            print("    " + ",".join(line) + ",")
            line = []
    if line:
        print("    " + ",".join(line) + ",")
    print("};")
    print()

    print("inline constexpr char32_t kNfdExpansion[] = {")
    line = []
    for x in flat:
        line.append(f"0x{x:X}")
        if len(line) == 12:
            print("    " + ",".join(line) + ",")
            line = []
    if line:
        print("    " + ",".join(line) + ",")
    print("};")

    sys.stderr.write(
        f"nfd entries: {len(entries)}, expansion cps: {len(flat)}, "
        f"lower simple: {len(lower_simple)}, special: {len(lower_special)}\n"
    )


if __name__ == "__main__":
    main()
