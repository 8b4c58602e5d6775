# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C evaluator for compiled programs; same semantics as ``_pykernel``."""

from libc.stdlib cimport malloc, free


cdef struct Ctx:
    const int* p
    const int* m
    const int* sizes
    int* slots
    int* env          # triples (sort, index, value)
    int top


cdef int term(Ctx* c, int* pc) noexcept nogil:
    cdef const int* p = c.p
    cdef int op = p[pc[0]]
    cdef int s, i, k, n, idx, at
    if op == 6:
        k = c.slots[p[pc[0] + 1]]
        pc[0] += 2
        return k
    if op == 9:
        s = p[pc[0] + 1]
        i = p[pc[0] + 2]
        pc[0] += 3
        k = c.top - 1
        while k >= 0:
            if c.env[3 * k] == s and c.env[3 * k + 1] == i:
                return c.env[3 * k + 2]
            k -= 1
        return 0
    n = p[pc[0] + 2]
    idx = p[pc[0] + 1]
    at = pc[0] + 3
    pc[0] = at + n
    for k in range(n):
        idx += p[at + k] * term(c, pc)
    return c.m[idx]


cdef int form(Ctx* c, int pc) noexcept nogil:
    cdef const int* p = c.p
    cdef int op = p[pc]
    cdef int k, d, saved, n, q, a, b, ok
    if op == 0:
        return 0
    if op == 1:
        return 1 - form(c, pc + 1)
    if op == 2:
        if form(c, pc + 2):
            return 1
        return form(c, pc + 2 + p[pc + 1])
    if op == 3:
        k = p[pc + 1]
        saved = c.slots[k]
        ok = 1
        n = c.sizes[p[pc + 2]]
        for d in range(n):
            c.slots[k] = d
            if not form(c, pc + 3):
                ok = 0
                break
        c.slots[k] = saved
        return ok
    if op == 4:
        q = pc
        return term(c, &q) != 0
    if op == 5:
        q = pc + 1
        a = term(c, &q)
        b = term(c, &q)
        return a == b
    if op == 8:
        k = c.top
        c.env[3 * k] = p[pc + 1]
        c.env[3 * k + 1] = p[pc + 2]
        c.top = k + 1
        ok = 1
        n = c.sizes[p[pc + 1]]
        for d in range(n):
            c.env[3 * k + 2] = d
            if not form(c, pc + 3):
                ok = 0
                break
        c.top = k
        return ok
    return -1


def eval_batch(const int[::1] code, const int[::1] starts, const int[::1] models,
               int n_models, int stride, const int[::1] sizes, int n_slots, int depth):
    """Truth of every program in every model, program-major."""
    cdef Py_ssize_t n_progs = starts.shape[0]
    out = bytearray(n_progs * n_models)
    cdef unsigned char[::1] o = out
    cdef Ctx c
    cdef Py_ssize_t i, j
    cdef int r
    if n_progs == 0 or n_models == 0:
        return out
    c.slots = <int*> malloc(sizeof(int) * (n_slots + 1))
    c.env = <int*> malloc(sizeof(int) * 3 * (depth + 1))
    if c.slots == NULL or c.env == NULL:
        free(c.slots)
        free(c.env)
        raise MemoryError()
    c.p = &code[0]
    c.sizes = &sizes[0]
    try:
        with nogil:
            for i in range(n_progs):
                for j in range(n_models):
                    for r in range(n_slots + 1):
                        c.slots[r] = 0
                    c.top = 0
                    c.m = &models[j * stride]
                    r = form(&c, starts[i])
                    if r < 0:
                        break
                    o[i * n_models + j] = r
                if r < 0:
                    break
    finally:
        free(c.slots)
        free(c.env)
    if r < 0:
        raise ValueError("bad opcode in program")
    return out
