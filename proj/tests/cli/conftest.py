import json
import os
import pathlib
import subprocess

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parents[2]


def _registry():
    resources = []
    for path in sorted((ROOT / "schema").glob("*.schema.json")):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, name):
    schema = json.loads((ROOT / "schema" / f"{name}.schema.json").read_text())
    Draft202012Validator(schema, registry=REGISTRY).validate(doc)


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("BLOCKDESCENT_BIN", str(ROOT / "build" / "blockdescent"))

    def run(*args, env=None):
        full_env = {k: v for k, v in os.environ.items() if k != "BLOCKDESCENT_SEED"}
        full_env.update(env or {})
        return subprocess.run([exe, *map(str, args)], capture_output=True, text=True, env=full_env)

    return run


@pytest.fixture(scope="session")
def data():
    return ROOT / "data"
