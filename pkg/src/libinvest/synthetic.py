"""Seeded generator for small C++ projects that share one library.

Used to exercise corpus runs where no real project data is available.
"""

from __future__ import annotations

import random
from pathlib import Path

from .corpus import ProjectBundle, ProjectOptions

_OPS = ("+", "-", "*", "%", "^", "&", "|")
_CMP = ("<", ">", "<=", ">=", "==", "!=")


def _expr(rng: random.Random, names: list[str], depth: int = 0) -> str:
    if depth > 1 or rng.random() < 0.4:
        return rng.choice(names) if rng.random() < 0.6 else str(rng.randint(1, 99))
    return f"{_expr(rng, names, depth + 1)} {rng.choice(_OPS)} {_expr(rng, names, depth + 1)}"


def _statements(rng: random.Random, names: list[str], count: int, indent: str) -> list[str]:
    out = []
    for _ in range(count):
        target = rng.choice(names)
        roll = rng.random()
        if roll < 0.2:
            out.append(f"{indent}if ({target} {rng.choice(_CMP)} {rng.randint(0, 50)}) "
                       f"{target} = {_expr(rng, names)};")
        elif roll < 0.3:
            out.append(f"{indent}while ({target} > {rng.randint(100, 500)}) {target} = {target} / 2;")
        else:
            out.append(f"{indent}{target} = {_expr(rng, names)};")
    return out


def library_source(rng: random.Random, n_methods: int, cls: str = "Kit") -> tuple[str, list[str]]:
    """Library text and the names of its methods."""
    names = [f"op{i}" for i in range(n_methods)]
    lines = [f"{cls}::{cls}()", "{", "  state = 0;", "}"]
    for name in names:
        locals_ = ["a", "b", "t"]
        lines.append(f"int {cls}::{name}(int a, int b)")
        lines.append("{")
        lines.append(f"  int t = {_expr(rng, ['a', 'b'])};")
        lines.extend(_statements(rng, locals_, rng.randint(1, 8), "  "))
        lines.append("  return t;")
        lines.append("}")
    return "\n".join(lines) + "\n", names


def program_source(rng: random.Random, methods: list[str], cls: str = "Kit") -> str:
    own = rng.randint(4, 40)
    called = rng.sample(methods, rng.randint(1, len(methods)))
    variables = ["x", "y", "z"]
    body = [f"  {cls} k;", "  int x = 1;", "  int y = 2;", "  int z = 3;"]
    body.extend(_statements(rng, variables, own, "  "))
    for name in called:
        for _ in range(rng.randint(1, 3)):
            body.append(f"  {rng.choice(variables)} = k.{name}({rng.choice(variables)}, "
                        f"{rng.randint(0, 9)});")
    tail = body[4:]
    rng.shuffle(tail)
    body = body[:4] + tail
    return "\n".join([f'#include "{cls}.h"', "int main()", "{", *body, "  return x;", "}"]) + "\n"


def make_bundles(n_projects: int = 10, n_methods: int = 12, seed: int = 0,
                 options: ProjectOptions | None = None) -> list[ProjectBundle]:
    """``n_projects`` in-memory bundles that all link the same library."""
    rng = random.Random(seed)
    lib, methods = library_source(rng, n_methods)
    return [
        ProjectBundle(
            name=f"project{p:02d}",
            program_sources=((f"project{p:02d}/main.cpp", program_source(rng, methods)),),
            library_sources=(("lib/Kit.cpp", lib),),
            options=options or ProjectOptions(),
        )
        for p in range(n_projects)
    ]


def write_corpus(root: str | Path, n_projects: int = 10, n_methods: int = 12,
                 seed: int = 0) -> Path:
    """Write generated projects under ``root`` and return the manifest path."""
    root = Path(root)
    bundles = make_bundles(n_projects, n_methods, seed)
    lib_dir = root / "lib"
    lib_dir.mkdir(parents=True, exist_ok=True)
    (lib_dir / "Kit.cpp").write_text(bundles[0].library_sources[0][1], encoding="utf-8")
    lines = ["manifest_version = 1", "", "[defaults]", 'profile = "cpp-thesis"', ""]
    for b in bundles:
        path, text = b.program_sources[0]
        (root / path).parent.mkdir(parents=True, exist_ok=True)
        (root / path).write_text(text, encoding="utf-8")
        lines += ["[[project]]", f'name = "{b.name}"', f'program = ["{b.name}"]',
                  'library = ["lib"]', ""]
    manifest = root / "corpus.toml"
    manifest.write_text("\n".join(lines), encoding="utf-8")
    return manifest
