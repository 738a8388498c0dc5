from __future__ import annotations

import io
import pathlib
import typing

from ..core.pluggable import Pluggable
from ..utils.logger import logger
from ..utils.serialize import serialize


class ReportWriter(Pluggable, plugin_prefix="agreement_forge/plugins/report_", plugin_default="json"):
    """
    Writes statistics and reports; the format follows the file extension
    (``.json``, ``.yaml``/``.yml``) unless ``kind`` names it.
    """

    _plugin_registry = {}

    def __new__(cls, path: str | pathlib.Path, *args, kind: str | None = None, **kwargs) -> typing.Self:
        if cls is not ReportWriter:
            return super().__new__(cls, *args, **kwargs)
        if kind is None:
            kind = pathlib.Path(path).suffix.lstrip(".").lower() or None
        if kind == "yml":
            kind = "yaml"
        return super().__new__(cls, _plugin_name=kind)

    def __init__(self, path: str | pathlib.Path, *args, kind: str | None = None, **kwargs) -> None:
        self._path = pathlib.Path(path)

    @property
    def path(self) -> pathlib.Path:
        return self._path

    def write(self, obj: typing.Any) -> pathlib.Path:
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with open(self._path, "w", encoding="utf-8") as fid:
            self.dump(serialize(obj), fid)
        logger.debug(f"Write {self.__class__.__name__} {self._path}")
        return self._path

    def dump(self, data, fid: typing.IO[str]) -> None:
        raise NotImplementedError()

    def dumps(self, obj: typing.Any) -> str:
        buffer = io.StringIO()
        self.dump(serialize(obj), buffer)
        return buffer.getvalue()
