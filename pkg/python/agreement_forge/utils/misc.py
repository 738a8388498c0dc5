import concurrent.futures
import typing

T = typing.TypeVar("T")


def ordered_results(calls: typing.Sequence[typing.Callable[[], T]], jobs: int = 1) -> typing.Iterator[T]:
    """
    Results of ``calls`` in the order given.

    With ``jobs`` > 1 the calls run on a thread pool; a caller that stops early
    cancels the calls not yet started. Exceptions surface when their result is
    reached, as in the sequential case.
    """
    if jobs <= 1 or len(calls) <= 1:
        for call in calls:
            yield call()
        return

    pool = concurrent.futures.ThreadPoolExecutor(max_workers=jobs)
    try:
        futures = [pool.submit(call) for call in calls]
        for future in futures:
            yield future.result()
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
