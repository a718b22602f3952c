"""Bundled machine descriptions used by the demos and the test suite."""

from importlib import resources


def asset_path(name: str) -> str:
    """Filesystem path of a bundled ``.aut``, ``.tm`` or ``.wiring`` file."""
    path = resources.files(__package__).joinpath(name)
    if not path.is_file():
        raise FileNotFoundError(name)
    return str(path)


def asset_names() -> list[str]:
    """All bundled file names, sorted."""
    return sorted(
        entry.name
        for entry in resources.files(__package__).iterdir()
        if entry.name.endswith((".aut", ".tm", ".wiring"))
    )
