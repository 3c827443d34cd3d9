# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops of the slot simulator.

Same signatures and results as :mod:`bsim._kernels_py`.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def uplink_receive(cnp.uint8_t[:, ::1] known, cnp.uint8_t[:, ::1] hear,
                   cnp.int64_t[::1] tx, cnp.int64_t[::1] pkts):
    """Deliver one uplink slot: every idle node picks up the packets of the
    transmitters it hears. Returns the receiver mask."""
    cdef Py_ssize_t n = known.shape[0]
    cdef Py_ssize_t ntx = tx.shape[0]
    cdef Py_ssize_t r, i
    rx_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] rx = rx_arr
    cdef cnp.uint8_t[::1] busy = np.zeros(n, dtype=np.uint8)
    for i in range(ntx):
        busy[tx[i]] = 1
    for r in range(n):
        if busy[r]:
            continue
        for i in range(ntx):
            if hear[r, tx[i]]:
                known[r, pkts[i]] = 1
                rx[r] = 1
    return rx_arr


def lack_counts(cnp.uint8_t[:, ::1] known, cnp.int64_t[::1] members):
    """Per node, how many of ``members`` it does not hold."""
    cdef Py_ssize_t n = known.shape[0]
    cdef Py_ssize_t k = members.shape[0]
    cdef Py_ssize_t r, i
    cdef cnp.int64_t c
    out_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    for r in range(n):
        c = 0
        for i in range(k):
            if not known[r, members[i]]:
                c += 1
        out[r] = c
    return out_arr


def plan_pools(cnp.uint8_t[:, ::1] known, cnp.int64_t[::1] dest,
               cnp.int64_t[::1] order, bint distinct_dest):
    """First-fit grouping of packets into coding pools.

    A packet joins the first pool whose combination count it does not raise;
    the count of a pool is the largest number of members any member's
    destination is missing. Returns ``(pool_of, costs)`` where ``pool_of`` is
    aligned with ``order``.
    """
    cdef Py_ssize_t k = order.shape[0]
    cdef Py_ssize_t npk = known.shape[1]
    cdef Py_ssize_t qi, pi, mi, npools = 0
    cdef cnp.int64_t q, p, dq, lq, worst, cand
    pool_of_arr = np.full(k, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] pool_of = pool_of_arr
    # pools stored as flat member arrays with start offsets; at most k pools
    cdef cnp.int64_t[::1] members = np.empty(k, dtype=np.int64)
    cdef cnp.int64_t[::1] lack = np.zeros(npk, dtype=np.int64)
    cdef cnp.int64_t[::1] cost = np.zeros(k, dtype=np.int64)
    cdef cnp.int64_t[::1] size = np.zeros(k, dtype=np.int64)
    cdef cnp.int64_t[::1] nxt = np.full(k, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] head = np.full(k, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] tail = np.full(k, -1, dtype=np.int64)
    cdef bint ok
    for qi in range(k):
        q = order[qi]
        dq = dest[q]
        placed = False
        for pi in range(npools):
            lq = 0 if known[dq, q] else 1
            worst = 0
            ok = True
            mi = head[pi]
            while mi >= 0:
                p = members[mi]
                if distinct_dest and dest[p] == dq:
                    ok = False
                    break
                if not known[dq, p]:
                    lq += 1
                cand = lack[p] + (0 if known[dest[p], q] else 1)
                if cand > worst:
                    worst = cand
                mi = nxt[mi]
            if not ok:
                continue
            if lq > worst:
                worst = lq
            if worst <= cost[pi]:
                mi = head[pi]
                while mi >= 0:
                    p = members[mi]
                    if not known[dest[p], q]:
                        lack[p] += 1
                    mi = nxt[mi]
                lack[q] = lq
                members[qi] = q
                nxt[tail[pi]] = qi
                tail[pi] = qi
                size[pi] += 1
                pool_of[qi] = pi
                placed = True
                break
        if not placed:
            lack[q] = 0 if known[dq, q] else 1
            members[qi] = q
            head[npools] = qi
            tail[npools] = qi
            size[npools] = 1
            cost[npools] = lack[q]
            pool_of[qi] = npools
            npools += 1
    return pool_of_arr, np.asarray(cost[:npools]).copy()
