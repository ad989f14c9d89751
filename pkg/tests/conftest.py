import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")


@pytest.fixture
def announce(capsys):
    """Print one acceptance line straight to the terminal."""
    def emit(number, ok, detail=""):
        with capsys.disabled():
            print("\nACCEPTANCE %d %s %s" % (number, "PASS" if ok else "FAIL", detail))
    return emit
