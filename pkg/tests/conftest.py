import pytest

from helpers import make_course_files


@pytest.fixture(scope="session")
def course_files(tmp_path_factory):
    """Synthetic course data shared by the CLI and acceptance tests."""
    root = tmp_path_factory.mktemp("course")
    return make_course_files(root)
