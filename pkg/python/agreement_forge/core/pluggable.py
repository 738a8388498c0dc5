"""
Named implementations chosen at run time.

A base class declares ``plugin_prefix`` and its own ``_plugin_registry``;
implementations declare ``plugin_name``. ``Base(..., _plugin_name="x")``
returns an instance of the implementation registered as x, importing
``<prefix>x`` on first use when nothing is registered under that name yet.
"""

from __future__ import annotations

import abc
import importlib.util
import sys
import typing

from ..utils.logger import logger


def forge_load_module(mod_path: str):
    """Import ``mod_path`` once; returns None when no such module exists."""
    if mod_path in sys.modules:
        return sys.modules[mod_path]

    try:
        spec = importlib.util.find_spec(mod_path)
    except ModuleNotFoundError:
        spec = None

    if spec is None:
        return None

    module = importlib.util.module_from_spec(spec)
    sys.modules[spec.name] = module
    spec.loader.exec_module(module)
    logger.verbose(f"Load plugin module {spec.name}")
    return module


class Pluggable(abc.ABC):
    _plugin_registry: typing.Dict[str, type] = {}

    @classmethod
    def _qualified(cls, plugin_name: str) -> str:
        if not isinstance(plugin_name, str):
            raise TypeError(f"Illegal plugin name {plugin_name!r}!")

        short = plugin_name.lower().replace("-", "_").replace("+", "_")
        if short and not short.replace(".", "_").isidentifier():
            raise RuntimeError(f"Illegal plugin name {plugin_name!r}!")

        prefix = getattr(cls, "_plugin_prefix", None) or f"{cls.__module__}."
        prefix = prefix.replace("/", ".").lstrip(".")
        return short if short.startswith(prefix) else prefix + short

    @classmethod
    def register(cls, plugin_name: str | typing.Sequence[str], plugin_cls: type | None = None):
        """Register ``plugin_cls`` under one or more names; without a class, returns a decorator."""
        if plugin_cls is None:

            def decorator(o_cls):
                cls.register(plugin_name, o_cls)
                return o_cls

            return decorator

        names = [plugin_name] if isinstance(plugin_name, str) else list(plugin_name)
        for name in names:
            qualified = cls._qualified(name)
            if "__plugin_name__" not in plugin_cls.__dict__:
                plugin_cls.__plugin_name__ = qualified
            cls._plugin_registry[qualified] = plugin_cls
        return None

    @classmethod
    def _lookup(cls, plugin_name: str | None) -> type:
        plugin_name = plugin_name or getattr(cls, "_plugin_default", None)
        if plugin_name is None:
            return cls

        qualified = cls._qualified(plugin_name)
        if qualified not in cls._plugin_registry:
            # 模块导入时由类定义自行注册
            forge_load_module(qualified)

        try:
            return cls._plugin_registry[qualified]
        except KeyError:
            raise RuntimeError(f"No implementation '{qualified}' registered for '{cls.__name__}'!") from None

    @classmethod
    def plugin_names(cls) -> typing.List[str]:
        """Short names of the registered implementations."""
        prefix = cls._qualified("")
        return sorted(k.removeprefix(prefix) for k in cls._plugin_registry if k.startswith(prefix))

    def __new__(cls, *args, _plugin_name: str | None = None, **kwargs) -> typing.Self:
        if cls is Pluggable:
            raise RuntimeError("Pluggable is abstract!")
        if _plugin_name is None and "_plugin_prefix" not in cls.__dict__:
            # 具体实现直接构造
            return object.__new__(cls)
        return object.__new__(cls._lookup(_plugin_name))

    def __init_subclass__(cls, plugin_name=None, plugin_default=None, plugin_prefix=None, **kwargs) -> None:
        if plugin_prefix is not None:
            cls._plugin_prefix = plugin_prefix.replace("/", ".")
        if plugin_default is not None:
            cls._plugin_default = plugin_default
        if plugin_name is not None:
            cls._plugin_name = plugin_name
            cls.register(plugin_name, cls)
        super().__init_subclass__(**kwargs)
