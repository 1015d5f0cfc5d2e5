import pytest

from sketchmocap.dataset import RoleMap, build_index
from sketchmocap.demo_data import write_demo_corpus


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    write_demo_corpus(d, count=12, frames=140)
    return d


@pytest.fixture(scope="session")
def roles(corpus_dir):
    return RoleMap.from_file(corpus_dir / "roles.json")


@pytest.fixture(scope="session")
def index(corpus_dir, roles):
    return build_index(corpus_dir, roles, frame_count=100)


@pytest.fixture(scope="session")
def bench_corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("bench_corpus")
    write_demo_corpus(d, count=55, frames=140)
    return d


@pytest.fixture(scope="session")
def bench_index(bench_corpus_dir):
    roles = RoleMap.from_file(bench_corpus_dir / "roles.json")
    return build_index(bench_corpus_dir, roles, frame_count=100)
