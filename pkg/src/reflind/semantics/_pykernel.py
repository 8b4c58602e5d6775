"""Pure-Python evaluator for compiled programs (fallback for the C kernel)."""

from __future__ import annotations

from typing import Sequence


def _term(p, pc, m, base, slots, env, top):
    op = p[pc]
    if op == 6:
        return slots[p[pc + 1]], pc + 2
    if op == 9:
        s, i = p[pc + 1], p[pc + 2]
        for k in range(top - 1, -1, -1):
            fs, fi, fd = env[k]
            if fs == s and fi == i:
                return fd, pc + 3
        return 0, pc + 3
    n = p[pc + 2]
    idx = base + p[pc + 1]
    q = pc + 3 + n
    for j in range(n):
        v, q = _term(p, q, m, base, slots, env, top)
        idx += p[pc + 3 + j] * v
    return m[idx], q


def _form(p, pc, m, base, sizes, slots, env, top):
    op = p[pc]
    if op == 0:
        return False
    if op == 1:
        return not _form(p, pc + 1, m, base, sizes, slots, env, top)
    if op == 2:
        if _form(p, pc + 2, m, base, sizes, slots, env, top):
            return True
        return _form(p, pc + 2 + p[pc + 1], m, base, sizes, slots, env, top)
    if op == 3:
        k = p[pc + 1]
        saved = slots[k]
        ok = True
        for d in range(sizes[p[pc + 2]]):
            slots[k] = d
            if not _form(p, pc + 3, m, base, sizes, slots, env, top):
                ok = False
                break
        slots[k] = saved
        return ok
    if op == 4:
        n = p[pc + 2]
        idx = base + p[pc + 1]
        q = pc + 3 + n
        for j in range(n):
            v, q = _term(p, q, m, base, slots, env, top)
            idx += p[pc + 3 + j] * v
        return m[idx] != 0
    if op == 5:
        a, q = _term(p, pc + 1, m, base, slots, env, top)
        b, _ = _term(p, q, m, base, slots, env, top)
        return a == b
    if op == 8:
        s, i = p[pc + 1], p[pc + 2]
        if len(env) <= top:
            env.append(None)
        for d in range(sizes[s]):
            env[top] = (s, i, d)
            if not _form(p, pc + 3, m, base, sizes, slots, env, top + 1):
                return False
        return True
    raise ValueError(f"bad opcode {op} at {pc}")


def eval_batch(
    code: Sequence[int],
    starts: Sequence[int],
    models: Sequence[int],
    n_models: int,
    stride: int,
    sizes: Sequence[int],
    n_slots: int,
    depth: int,
) -> bytearray:
    """Truth of every program in every model, program-major."""
    p = list(code)
    m = list(models)
    sz = list(sizes)
    out = bytearray(len(starts) * n_models)
    k = 0
    for st in starts:
        for j in range(n_models):
            slots = [0] * max(n_slots, 1)
            out[k] = _form(p, st, m, j * stride, sz, slots, [], 0)
            k += 1
    return out
