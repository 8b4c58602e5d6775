"""Compare the compiled and pure-Python evaluators on a theorem2-sized batch.

    python3 benchmarks/bench_kernel.py [--depth 1] [--repeat 3]

Each backend evaluates every closed formula of theory E to the given depth,
both directly and through its code term, in all 512 models of size 2.
"""

import argparse
import time

from reflind.benchgen import builtin_theory
from reflind.reflection import godel_encode, reflect_signature
from reflind.semantics import kernel
from reflind.semantics.compile import Layout, code_batch, direct_batch, enumerate_models, pack
from reflind.semantics.enumerate import enumerate_formulas


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    th = builtin_theory("E")
    rm = reflect_signature(th)
    lay = Layout.of(th.signature, 2)
    models = list(enumerate_models(lay))
    packed = pack(models)
    formulas = list(enumerate_formulas(th.signature, args.depth))
    batches = {
        "direct": direct_batch(lay, formulas),
        "code": code_batch(lay, [godel_encode(f, rm) for f in formulas], rm),
    }
    print(f"{len(formulas)} formulas x {len(models)} models, best of {args.repeat}")
    times = {}
    outputs = {}
    for name, impl in sorted(kernel.backends().items()):
        for route, batch in batches.items():
            best = float("inf")
            for _ in range(args.repeat):
                t = time.perf_counter()
                out = kernel.eval_batch(batch, packed, len(models), lay, impl=impl)
                best = min(best, time.perf_counter() - t)
            times[name, route] = best
            outputs.setdefault(route, set()).add(bytes(out))
            print(f"  {name:7s} {route:7s} {best * 1000:9.1f} ms")
    assert all(len(v) == 1 for v in outputs.values()), "backends disagree"
    if "c" in kernel.backends():
        for route in batches:
            print(f"  speedup {route}: {times['python', route] / times['c', route]:.1f}x")
    else:
        print("  compiled backend not built")


if __name__ == "__main__":
    main()
