"""Run each JSON-emitting subcommand and validate its output against schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    cli, root = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in (root / "schemas").glob("*.schema.json")}
    registry = Registry().with_resources(
        [(s["$id"], Resource.from_contents(s)) for s in schemas.values()]
    )
    reports = schemas["reports.schema.json"]["$id"]

    def validator(defn):
        schema = {"$schema": "https://json-schema.org/draft/2020-12/schema", "$ref": f"{reports}#/$defs/{defn}"}
        return jsonschema.Draft202012Validator(schema, registry=registry)

    data = root / "data"
    with tempfile.TemporaryDirectory() as tmp:
        big = pathlib.Path(tmp) / "complex.json"
        big.write_text(json.dumps({"kind": "catalog", "name": "hp-family", "lambda": {"re": 0.3, "im": 1.0}, "p": 0}))
        cases = [
            ("check", ["check", data / "schemes/primal-phi4.json", "--levels", "12"]),
            ("check", ["check", data / "schemes/similar-not-equivalent.json"]),
            ("check", ["check", data / "schemes/perturbed-quadratic.json", "--space", data / "spaces/constants.json"]),
            ("check", ["check", data / "schemes/chaikin-table.json", "--space", data / "spaces/constants.json"]),
            ("check", ["check", big, "--levels", "8"]),
            ("subdivide", ["subdivide", data / "schemes/bspline-1.json", "--data", data / "inputs/delta.csv", "--json"]),
            ("subdivide", ["subdivide", big, "--data", data / "inputs/delta.csv", "--steps", "3", "--json"]),
            ("blf", ["blf", data / "schemes/h0.json", "--k", "5", "--stationary", data / "masks/hat.json",
                     "--mlist", "0,2", "--json"]),
            ("order", ["order", data / "schemes/bspline-1.json", "--json"]),
            ("order", ["order", data / "schemes/primal-phi4.json", "--f", "exp", "--gamma", "4", "--json"]),
            ("catalogList", ["catalog", "list"]),
            ("catalogBuild", ["catalog", "build", "bspline-2"]),
            ("catalogBuild", ["catalog", "build", "hp-family", "--lambda", "0,1", "--p", "0", "--levels", "2"]),
        ]
        scheme_file = jsonschema.Draft202012Validator(schemas["scheme-file.schema.json"], registry=registry)
        failures = 0
        for defn, args in cases:
            proc = subprocess.run([str(cli)] + [str(a) for a in args], capture_output=True, text=True)
            label = " ".join(str(a) for a in args)
            if proc.returncode not in (0, 1):
                print(f"FAIL {label}: exit {proc.returncode}\n{proc.stderr}")
                failures += 1
                continue
            errors = list(validator(defn).iter_errors(json.loads(proc.stdout)))
            for e in errors[:5]:
                print(f"FAIL {label}: {e.json_path}: {e.message}")
            failures += bool(errors)
            if not errors:
                print(f"ok   {defn}: {label}")
        for path in sorted((data / "schemes").glob("*.json")):
            errors = list(scheme_file.iter_errors(json.loads(path.read_text())))
            for e in errors[:5]:
                print(f"FAIL {path.name}: {e.json_path}: {e.message}")
            failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
