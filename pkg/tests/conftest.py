import re

import pytest

from homolift import corpus
from homolift.search import Analysis


def pytest_runtest_logreport(report):
    # acceptance tests print their own PASS lines; mirror failures
    if report.when == "call" and report.failed:
        match = re.search(r"test_criterion_(\d+)", report.nodeid)
        if match:
            print(f"\nACCEPTANCE {int(match.group(1))} FAIL: {report.nodeid}")


@pytest.fixture(scope="session")
def corpus_maps():
    return corpus.load_all()


@pytest.fixture(scope="session")
def analyses(corpus_maps):
    return {name: Analysis.of(f) for name, f in corpus_maps.items()}


@pytest.fixture(scope="session")
def s3(corpus_maps):
    return corpus_maps["example_s3"]


@pytest.fixture(scope="session")
def golden(corpus_maps):
    return corpus_maps["golden_mean"]


@pytest.fixture(scope="session")
def identity2(corpus_maps):
    return corpus_maps["identity"]


@pytest.fixture(scope="session")
def silver(corpus_maps):
    return corpus_maps["unipotent_silver"]


@pytest.fixture(scope="session")
def rank2(corpus_maps):
    return corpus_maps["unipotent_rank2"]
