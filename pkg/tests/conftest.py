from pathlib import Path

import pytest

import guiloc

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def markor_dir() -> Path:
    return FIXTURES / "markor"


@pytest.fixture(scope="session")
def tinyembed_dir() -> Path:
    return FIXTURES / "tinyembed"


@pytest.fixture(scope="session")
def markor_corpus(markor_dir):
    return guiloc.load_corpus(markor_dir / "corpus", app_id="markor")


@pytest.fixture(scope="session")
def markor_index(markor_corpus):
    return guiloc.build_index(markor_corpus)


@pytest.fixture(scope="session")
def markor_scenario(markor_dir):
    return guiloc.parse_scenario(markor_dir / "scenario", bug_id="markor-1")


@pytest.fixture(scope="session")
def markor_report_tokens(markor_dir):
    return guiloc.preprocess_text((markor_dir / "report.txt").read_text())


NEW_FILE_DIALOG = "app/src/main/java/net/gsantner/markor/frontend/NewFileDialog.java"
MAIN_ACTIVITY = "app/src/main/java/net/gsantner/markor/activity/MainActivity.java"
MORE_FRAGMENT = "app/src/main/java/net/gsantner/markor/frontend/MoreFragment.java"


@pytest.fixture(scope="session")
def markor_paths():
    return {
        "new_file_dialog": NEW_FILE_DIALOG,
        "main_activity": MAIN_ACTIVITY,
        "more_fragment": MORE_FRAGMENT,
    }
