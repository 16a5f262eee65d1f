# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled development kernels; see _kernels.py for the reference semantics."""


def develop_ids(const int[:, ::1] top_tab, const int[:, ::1] right_tab,
                const int[::1] bottom, int[::1] side, int[::1] top_out):
    cdef Py_ssize_t w = bottom.shape[0]
    cdef Py_ssize_t h = side.shape[0]
    cdef Py_ssize_t i, j
    cdef int b, v, nv
    cdef bint bad = False
    with nogil:
        for i in range(w):
            b = bottom[i]
            for j in range(h):
                v = side[j]
                nv = right_tab[b, v]
                if nv < 0:
                    bad = True
                    break
                side[j] = nv
                b = top_tab[b, v]
            if bad:
                break
            top_out[i] = b
    if bad:
        raise ValueError("development hit a missing corner")


def stream_mismatch(const int[:, ::1] top_tab, const int[:, ::1] right_tab,
                    const int[::1] period, int[::1] side, Py_ssize_t max_cols):
    cdef Py_ssize_t h = side.shape[0]
    cdef Py_ssize_t plen = period.shape[0]
    cdef Py_ssize_t col, j
    cdef Py_ssize_t phase = 0
    cdef Py_ssize_t result = -1
    cdef int b, v, nv
    cdef bint bad = False
    with nogil:
        for col in range(max_cols):
            b = period[phase]
            for j in range(h):
                v = side[j]
                nv = right_tab[b, v]
                if nv < 0:
                    bad = True
                    break
                side[j] = nv
                b = top_tab[b, v]
            if bad:
                break
            if b != period[phase]:
                result = col
                break
            phase += 1
            if phase == plen:
                phase = 0
    if bad:
        raise ValueError("development hit a missing corner")
    return result
