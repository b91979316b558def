"""Print the activity-class tables of the shipped K3 and K4 documents,
optionally writing the JSON form next to them."""

import argparse
import io
from importlib import resources
from pathlib import Path

from activebij import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="directory for <name>_table.json files")
    args = ap.parse_args()
    for name in ("k3", "k4"):
        path = str(resources.files("activebij").joinpath("data", f"{name}.json"))
        print(f"== {name} ==")
        cli.main(["table", path])
        print()
        cli.main(["tutte", path, "--method", "all"])
        print()
        if args.out:
            buf = io.StringIO()
            cli.main(["table", path, "--json"], out=buf)
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{name}_table.json").write_text(buf.getvalue())


if __name__ == "__main__":
    main()
