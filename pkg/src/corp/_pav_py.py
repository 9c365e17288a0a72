"""Pure-Python PAV kernels; same contract as the compiled ``_pav_ext``."""

import numpy as np


def _pav(counts, events):
    start, w, e = [], [], []
    for j, (c, o) in enumerate(zip(counts, events)):
        start.append(j)
        w.append(c)
        e.append(o)
        # merge while the previous block's frequency is >= the top block's
        while len(w) > 1 and e[-2] * w[-1] >= e[-1] * w[-2]:
            wt, et = w.pop(), e.pop()
            start.pop()
            w[-1] += wt
            e[-1] += et
    return start, w, e


def pav_blocks(counts, events):
    counts = [int(c) for c in counts]
    events = [int(o) for o in events]
    start, w, e = _pav(counts, events)
    stop = [s - 1 for s in start[1:]] + ([len(counts) - 1] if start else [])
    as_arr = lambda v: np.asarray(v, dtype=np.int64)
    return as_arr(start), as_arr(stop), as_arr(w), as_arr(e)


def pav_fitted_batch(counts, events):
    counts = [int(c) for c in counts]
    events = np.asarray(events, dtype=np.int64)
    k = len(counts)
    if events.ndim != 2 or events.shape[1] != k:
        raise ValueError("events must have one column per unique value")
    out = np.empty(events.shape, dtype=np.float64)
    for r, row in enumerate(events.tolist()):
        start, w, e = _pav(counts, row)
        bounds = start[1:] + [k]
        for s, t, wb, eb in zip(start, bounds, w, e):
            out[r, s:t] = eb / wb
    return out
