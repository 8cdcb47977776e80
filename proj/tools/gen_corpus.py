#!/usr/bin/env python3
"""Writes the bundled .air corpus: suite/, showcase/ and versions/.

Deterministic for a given seed. Assertions follow the instrumenter's
placement: div and bounds checks before the operation, overflow after.
"""
import argparse
import pathlib
import random

MIN32, MAX32 = -(2**31), 2**31 - 1


class Builder:
    def __init__(self):
        self.arrays = []
        self.blocks = []
        self.next_id = 1
        self.stmts = 0
        self.runs = 1

    def aid(self):
        self.next_id += 1
        return self.next_id - 1

    def havoc(self, var, lo, hi):
        self.runs *= hi - lo + 1
        return f"{var} = havoc({lo}, {hi});"

    def overflow(self, var):
        return f"assert overflow: {MIN32} <= {var} && {var} <= {MAX32} #{self.aid()};"

    def div(self, var):
        return f"assert div: {var} != 0 #{self.aid()};"

    def bounds(self, idx, arr):
        return f"assert bounds: 0 <= {idx} && {idx} < len({arr}) #{self.aid()};"

    def uaf(self, h):
        return f"assert uaf: status({h}) == 1 #{self.aid()};"

    def block(self, name, stmts, term):
        self.stmts += len(stmts)
        lines = [f"    {s}" for s in stmts + [term]]
        self.blocks.append(f"  block {name} {{\n" + "\n".join(lines) + "\n  }")

    def text(self, name):
        decls = "".join(f"  array {a}[{n}];\n" for a, n in self.arrays)
        return f"fn {name} {{\n{decls}" + "\n".join(self.blocks) + "\n}\n"


def fill_loop(b, k, nxt, rng, off_by_one=False):
    a, n, i, t = f"a{k}", f"n{k}", f"i{k}", f"t{k}"
    b.arrays.append((a, n))
    b.block(f"s{k}", [b.havoc(n, 1, rng.randint(3, 6)), f"{i} = 0;"], f"goto h{k};")
    cmp = "<=" if off_by_one else "<"
    b.block(f"h{k}", [], f"br ({i} {cmp} {n}) then: b{k} else: {nxt};")
    b.block(f"b{k}", [b.bounds(i, a), f"{a}[{i}] = {i};", f"{t} = {i} * {rng.randint(2, 9)};", b.overflow(t),
                      f"{i} = {i} + 1;", b.overflow(i)], f"goto h{k};")


def div_after_join(b, k, nxt, rng, bug=False):
    x, y, t, q = f"x{k}", f"y{k}", f"t{k}", f"q{k}"
    lo, hi = rng.randint(-4, 0), rng.randint(6, 12)
    c = lo if bug else rng.randint(lo + 1, hi - 1)
    b.block(f"s{k}", [b.havoc(x, 0, 1)], f"br ({x} == 0) then: l{k} else: r{k};")
    b.block(f"l{k}", [f"{y} = {lo};"], f"goto j{k};")
    b.block(f"r{k}", [f"{y} = {hi};"], f"goto j{k};")
    b.block(f"j{k}", [f"{t} = {y} - {c};", b.div(t), f"{q} = {rng.randint(50, 500)} / {t};", b.overflow(q)],
            f"goto {nxt};")


def div_guard(b, k, nxt, rng):
    d, q, m = f"d{k}", f"q{k}", f"m{k}"
    r = rng.randint(2, 4)
    b.block(f"s{k}", [b.havoc(d, -r, r)], f"br ({d} != 0) then: g{k} else: {nxt};")
    b.block(f"g{k}", [b.div(d), f"{q} = {rng.randint(10, 99)} / {d};", b.overflow(q), b.div(d), f"{m} = {q} % {d};"],
            f"goto {nxt};")


def odd_div(b, k, nxt, rng):
    x, y, q = f"x{k}", f"y{k}", f"q{k}"
    h = rng.randint(3, 6)
    b.block(f"s{k}", [b.havoc(x, 0, h), f"{y} = 2 * {x} - {2 * (h // 2) + 1};", b.div(y), f"{q} = 60 / {y};",
                      b.overflow(q)], f"goto {nxt};")


def uaf_flag(b, k, nxt, rng, bug=False):
    f, h, v = f"f{k}", f"h{k}", f"v{k}"
    b.block(f"s{k}", [b.havoc(f, 0, 1), f"alloc({h});", b.uaf(h), f"deref({h});"],
            f"br ({f} == 1) then: fr{k} else: j{k};")
    b.block(f"fr{k}", [f"free({h});"], f"goto j{k};")
    use = f"{f} == 1" if bug else f"{f} == 0"
    b.block(f"j{k}", [], f"br ({use}) then: u{k} else: {nxt};")
    b.block(f"u{k}", [b.uaf(h), f"deref({h});", f"{v} = {f} + 1;", b.overflow(v)], f"goto {nxt};")


def accumulate(b, k, nxt, rng):
    n, s, i = f"n{k}", f"s{k}", f"i{k}"
    b.block(f"s{k}", [b.havoc(n, 0, rng.randint(3, 6)), f"{s} = 0;", f"{i} = 0;"], f"goto h{k};")
    b.block(f"h{k}", [], f"br ({i} < {n}) then: b{k} else: {nxt};")
    b.block(f"b{k}", [f"{s} = {s} + {i};", b.overflow(s), f"{i} = {i} + 1;", b.overflow(i)], f"goto h{k};")


def rel_index(b, k, nxt, rng):
    a, n, j, v, w = f"a{k}", f"n{k}", f"j{k}", f"v{k}", f"w{k}"
    b.arrays.append((a, n))
    b.block(f"s{k}", [b.havoc(n, 2, rng.randint(4, 7)), f"{j} = {n} - 1;", b.bounds(j, a), f"{a}[{j}] = 7;",
                      b.bounds(j, a), f"{v} = {a}[{j}];", f"{w} = {v} * {j};", b.overflow(w)], f"goto {nxt};")


def mul_chain(b, k, nxt, rng, bug=False):
    x, y, z = f"x{k}", f"y{k}", f"z{k}"
    big = 100000 if bug else rng.randint(10, 300)
    b.block(f"s{k}", [b.havoc(x, 1, rng.randint(2, 4)), f"{y} = {x} * {big};", b.overflow(y), f"{z} = {y} * {y};",
                      b.overflow(z)], f"goto {nxt};")


def mod_havoc(b, k, nxt, rng):
    m, x, r = f"m{k}", f"x{k}", f"r{k}"
    b.block(f"s{k}", [b.havoc(m, 0, rng.randint(2, 4)), f"{x} = {rng.randint(5, 40)};", b.div(m),
                      f"{r} = {x} % {m};", b.div(m), f"{r} = {x} / {m};", b.overflow(r)], f"goto {nxt};")


SNIPPETS = [
    (fill_loop, {}), (fill_loop, {"off_by_one": True}), (div_after_join, {}), (div_after_join, {"bug": True}),
    (div_guard, {}), (odd_div, {}), (uaf_flag, {}), (uaf_flag, {"bug": True}), (accumulate, {}), (rel_index, {}),
    (mul_chain, {}), (mul_chain, {"bug": True}), (mod_havoc, {}),
]


def build(parts, rng, max_runs=20000):
    b = Builder()
    names = [f"s{k}" for k in range(len(parts))] + ["done"]
    for k, (fn, kw) in enumerate(parts):
        fn(b, k, names[k + 1], rng, **kw)
    b.block("done", [], "return;")
    # Entry block comes first so it is the function entry.
    assert b.runs <= max_runs, b.runs
    return b


def suite(rng, count):
    out = {}
    for p in range(count):
        while True:
            picks = [SNIPPETS[rng.randrange(len(SNIPPETS))] for _ in range(rng.randint(4, 6))]
            # Every program guards each kind at least once.
            picks += [(uaf_flag, {}), (rel_index, {}), (div_guard, {})]
            rng.shuffle(picks)
            try:
                b = build(picks, random.Random(rng.random()))
            except AssertionError:
                continue
            if b.stmts <= 200:
                break
        out[f"p{p:02d}.air"] = b.text("main")
    return out


def showcase(rng):
    # Each mixes a precision gap for a different domain with the default's strengths.
    mixes = [
        [(div_guard, {}), (rel_index, {}), (div_after_join, {}), (fill_loop, {})],
        [(uaf_flag, {}), (odd_div, {}), (rel_index, {}), (uaf_flag, {})],
        [(odd_div, {}), (div_guard, {}), (accumulate, {}), (uaf_flag, {})],
        [(div_after_join, {}), (uaf_flag, {}), (fill_loop, {}), (div_guard, {}), (odd_div, {})],
    ]
    return {f"s{i}.air": build(m, random.Random(rng.random())).text("main") for i, m in enumerate(mixes)}


def versions(rng):
    out = {}
    for v in range(3):
        base = [(fill_loop, {}), (div_guard, {}), (uaf_flag, {}), (rel_index, {})]
        seed = rng.random()
        old = build(base, random.Random(seed)).text("main")
        # The new version appends one more guarded operation.
        new = build(base + [(odd_div, {})], random.Random(seed)).text("main")
        out[f"v{v}_old.air"] = old
        out[f"v{v}_new.air"] = new
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--count", type=int, default=24)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    root = pathlib.Path(args.out)
    for sub, files in (("suite", suite(rng, args.count)), ("showcase", showcase(rng)), ("versions", versions(rng))):
        d = root / sub
        d.mkdir(parents=True, exist_ok=True)
        for old in d.glob("*.air"):
            old.unlink()
        for name, text in files.items():
            (d / name).write_text(text)


if __name__ == "__main__":
    main()
