"""Worker-pool plumbing: deterministic fan-out for the few scans that allow it."""

import os


def worker_count():
    """Value of KLEINWIMAN_WORKERS (default 1); results never depend on it."""
    raw = os.environ.get("KLEINWIMAN_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"KLEINWIMAN_WORKERS must be an integer, got {raw!r}")
    return max(1, n)


def parallel_map(fn, items, workers=None):
    """Order-preserving map, fanned out over a fork pool when workers > 1.

    fn must be picklable (module-level).  The output is identical to the
    serial map for any worker count.
    """
    workers = worker_count() if workers is None else workers
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    import multiprocessing as mp

    ctx = mp.get_context("fork")
    with ctx.Pool(min(workers, len(items))) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers)))
