"""One pass/fail line per acceptance criterion, printed at the end of the run."""
from contextlib import contextmanager

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(num: int, title: str):
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        line = f"criterion {num} FAIL: {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        RESULTS[num] = line
        print(line)
        raise
    line = f"criterion {num} PASS: {title}" + (f" ({'; '.join(notes)})" if notes else "")
    RESULTS[num] = line
    print(line)
