import functools

import pytest
from hypothesis import settings, strategies as st

from regulus.generate import enumerate_categories

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def small_categories():
    return tuple(enumerate_categories(max_objects=3, max_morphisms=5))


def categories():
    """Hypothesis strategy over every category with <= 3 objects and <= 5 morphisms."""
    return st.sampled_from(small_categories())


@pytest.fixture(scope="session")
def corpus_ws():
    from regulus.corpus import corpus_files, load_corpus_file
    return {f: load_corpus_file(f) for f in corpus_files()}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
