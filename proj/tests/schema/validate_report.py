"""Run `gvc eval` on a generated clip and validate the report against the schema."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    with tempfile.TemporaryDirectory() as tmp:
        clip = pathlib.Path(tmp) / "clip.y4m"
        report = pathlib.Path(tmp) / "report.json"
        subprocess.run([cli, "corpus", "--generator", "textured-pan", "--width", "64",
                        "--height", "48", "--frames", "35", "-o", str(clip)], check=True)
        subprocess.run([cli, "eval", str(clip), "--refine-iters", "2", "--report", str(report)],
                       check=True)
        doc = json.loads(report.read_text())
    jsonschema.Draft202012Validator(schema).validate(doc)
    seq = doc["sequences"][0]
    assert seq["coded_frames"] == 29 and seq["discarded_frames"] == 6, seq
    for gop in seq["gops"]:
        assert gop["token_consistency_error"] <= gop["consistency_bound"], gop
    print("report valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
