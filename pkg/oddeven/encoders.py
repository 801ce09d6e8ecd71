import json
from collections import deque
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import MISSING, fields, is_dataclass
from enum import Enum
from inspect import isclass
from pathlib import PurePath
from types import NoneType, UnionType
from typing import (
    Annotated,
    Any,
    Literal,
    Protocol,
    TypeVar,
    Union,
    cast,
    get_args,
    get_origin,
    get_type_hints,
    runtime_checkable,
)

import numpy as np

from oddeven.exceptions import ConfigError, DomainError

T = TypeVar("T")


@runtime_checkable
class EncoderProtocol(Protocol):
    """
    An object able to turn a Python value into something `json.dumps` accepts.
    """

    def is_type(self, value: Any) -> bool: ...

    def serialize(self, value: Any) -> Any: ...


@runtime_checkable
class MoldingProtocol(Protocol):
    """
    An object able to mold raw JSON data into a given type.

    `is_type_structure` tells whether the molder owns a target type and
    `encode(structure, value)` performs the conversion. Molders raise
    `ConfigError` when the data does not fit; `apply_structure` prefixes the
    message with the location inside the document.
    """

    def is_type(self, value: Any) -> bool: ...

    def is_type_structure(self, value: Any) -> bool: ...

    def encode(self, structure: Any, value: Any) -> Any: ...


class Encoder:
    """
    Base class for encoders and molders.

    Subclasses set `__type__` to the handled type(s) and override `serialize`
    and/or `encode`.
    """

    __type__: type | tuple[type, ...] | None = None
    __encode__: bool = True

    def is_type(self, value: Any) -> bool:
        if self.__type__ is None:
            return False
        return isinstance(value, self.__type__)

    def is_type_structure(self, value: Any) -> bool:
        if self.__type__ is None or not isclass(value):
            return False
        try:
            return issubclass(value, self.__type__)
        except TypeError:
            return False

    def serialize(self, value: Any) -> Any:
        raise NotImplementedError(f"{type(self).__name__} must implement 'serialize'.")

    def encode(self, structure: Any, value: Any) -> Any:
        if not self.__encode__:
            return value
        raise NotImplementedError(f"{type(self).__name__} must implement 'encode' if '__encode__' is True.")


# Location of the value being molded, e.g. ("scans", "0", "base", "probe").
_MOLDING_PATH: ContextVar[tuple[str, ...]] = ContextVar("MOLDING_PATH", default=())


@contextmanager
def _nested(key: str) -> Iterator[None]:
    token = _MOLDING_PATH.set((*_MOLDING_PATH.get(), key))
    try:
        yield
    finally:
        _MOLDING_PATH.reset(token)


def current_path() -> str:
    """
    Dotted location of the value currently being molded ("" at the root).
    """
    return ".".join(_MOLDING_PATH.get())


def _fail(message: str) -> ConfigError:
    path = current_path()
    return ConfigError(f"{path}: {message}" if path else message, path=path or None)


class DataclassEncoder(Encoder, EncoderProtocol, MoldingProtocol):
    """
    Serializes dataclasses field by field and molds JSON objects into them.

    Molding is strict: keys that are not fields, missing required fields and
    values of the wrong type are all rejected. Validation errors raised by the
    dataclass itself (`__post_init__`) are reported at the dataclass location.
    """

    __type__ = object

    def is_type(self, v: Any) -> bool:
        return is_dataclass(v) and not isinstance(v, type)

    def is_type_structure(self, v: Any) -> bool:
        return isclass(v) and is_dataclass(v)

    def serialize(self, obj: Any) -> dict[str, Any]:
        return {f.name: getattr(obj, f.name) for f in fields(obj) if not f.name.startswith("_")}

    def encode(self, cls: type[T], data: Any) -> T:
        if isinstance(data, cls):
            return data
        if not isinstance(data, dict):
            raise _fail(f"expected an object for {cls.__name__}, got {type(data).__name__}")

        init_fields = {f.name: f for f in fields(cast(Any, cls)) if f.init}
        unknown = sorted(set(data) - set(init_fields))
        if unknown:
            raise _fail(f"unknown key(s) {', '.join(repr(k) for k in unknown)} for {cls.__name__}")

        hints = get_type_hints(cls, include_extras=True)
        kwargs: dict[str, Any] = {}
        for name, field in init_fields.items():
            if name in data:
                with _nested(name):
                    kwargs[name] = apply_structure(hints.get(name, Any), data[name])
            elif field.default is MISSING and field.default_factory is MISSING:
                with _nested(name):
                    raise _fail("missing required key")

        try:
            return cls(**kwargs)
        except (ConfigError, DomainError) as exc:
            raise _fail(exc.message) from exc
        except (TypeError, ValueError) as exc:
            raise _fail(str(exc)) from exc


class EnumEncoder(Encoder, EncoderProtocol, MoldingProtocol):
    """
    Enum members travel as their raw value.
    """

    __type__: type = Enum

    def serialize(self, obj: Any) -> Any:
        return obj.value

    def encode(self, cls: type[T], v: Any) -> T:
        try:
            return cls(v)  # type: ignore
        except ValueError:
            choices = ", ".join(repr(member.value) for member in cast(Any, cls))
            raise _fail(f"{v!r} is not one of {choices}") from None


class PurePathEncoder(Encoder, EncoderProtocol, MoldingProtocol):
    __type__: type = PurePath

    def serialize(self, obj: PurePath) -> str:
        return obj.as_posix()

    def encode(self, cls: type[T], v: Any) -> T:
        if not isinstance(v, str):
            raise _fail(f"expected a path string, got {type(v).__name__}")
        return cls(v)  # type: ignore


class NumpyEncoder(Encoder, EncoderProtocol, MoldingProtocol):
    """
    Arrays become (nested) lists, numpy scalars their Python counterpart.
    """

    __type__: tuple[type, ...] = (np.ndarray, np.generic)

    def is_type_structure(self, v: Any) -> bool:
        return v is np.ndarray

    def serialize(self, obj: np.ndarray | np.generic) -> Any:
        return obj.tolist() if isinstance(obj, np.ndarray) else obj.item()

    def encode(self, cls: type[T], v: Any) -> T:
        try:
            return cast(T, np.asarray(v, dtype=float))
        except (TypeError, ValueError):
            raise _fail("expected a numeric array") from None


class ComplexEncoder(Encoder, EncoderProtocol, MoldingProtocol):
    """
    Complex numbers travel as `[real, imag]` pairs.
    """

    __type__: type = complex

    def serialize(self, obj: complex) -> list[float]:
        return [obj.real, obj.imag]

    def encode(self, cls: type[T], v: Any) -> T:
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return cast(T, complex(v))
        if isinstance(v, list) and len(v) == 2:
            return cast(T, complex(float(v[0]), float(v[1])))
        raise _fail("expected a number or a [real, imag] pair")


class StructureEncoder(Encoder, EncoderProtocol, MoldingProtocol):
    """
    Sequences (`list[T]`, `tuple[T, ...]`, sets) serialize to lists; molding
    checks and molds every element against the parameter type.
    """

    __type__: tuple[type, ...] = (list, set, frozenset, tuple, deque)

    def is_type(self, v: Any) -> bool:
        return isinstance(v, self.__type__)

    def is_type_structure(self, v: Any) -> bool:
        origin = get_origin(v) or v
        return isclass(origin) and issubclass(origin, self.__type__)

    def serialize(self, obj: Any) -> list[Any]:
        if isinstance(obj, (set, frozenset)):
            return sorted(obj, key=repr)
        return list(obj)

    def encode(self, cls: Any, v: Any) -> Any:
        if not isinstance(v, list):
            raise _fail(f"expected a list, got {type(v).__name__}")
        origin = get_origin(cls) or cls
        args = get_args(cls)
        molded = []
        for index, item in enumerate(v):
            if not args:
                element_type: Any = Any
            elif origin is tuple and not (len(args) == 2 and args[1] is Ellipsis):
                if len(args) != len(v):
                    raise _fail(f"expected {len(args)} items, got {len(v)}")
                element_type = args[index]
            else:
                element_type = args[0]
            with _nested(str(index)):
                molded.append(apply_structure(element_type, item))
        return origin(molded)


class MappingEncoder(Encoder, MoldingProtocol):
    """
    Molds `dict[str, T]` values.
    """

    __type__: type = dict

    def is_type_structure(self, v: Any) -> bool:
        return (get_origin(v) or v) is dict

    def encode(self, cls: Any, v: Any) -> dict[str, Any]:
        if not isinstance(v, dict):
            raise _fail(f"expected an object, got {type(v).__name__}")
        args = get_args(cls)
        value_type = args[1] if len(args) == 2 else Any
        molded: dict[str, Any] = {}
        for key, item in v.items():
            with _nested(str(key)):
                molded[str(key)] = apply_structure(value_type, item)
        return molded


# Earlier encoders win: dataclasses before plain structures.
_DEFAULT_ENCODERS: tuple[EncoderProtocol | MoldingProtocol, ...] = (
    DataclassEncoder(),
    EnumEncoder(),
    PurePathEncoder(),
    NumpyEncoder(),
    ComplexEncoder(),
    StructureEncoder(),
    MappingEncoder(),
)

_ENCODERS: ContextVar[deque[EncoderProtocol | MoldingProtocol] | None] = ContextVar("ENCODERS", default=None)


def register_encoder(
    enc: type[EncoderProtocol | MoldingProtocol] | EncoderProtocol | MoldingProtocol,
) -> None:
    """
    Registers an encoder/molder ahead of the existing ones, replacing any
    encoder of the same class name.
    """
    if isinstance(enc, type):
        enc = enc()
    current = get_encoders()
    filtered = deque(e for e in current if type(e).__name__ != type(enc).__name__)
    filtered.appendleft(enc)
    _ENCODERS.set(filtered)


def get_encoders() -> deque[EncoderProtocol | MoldingProtocol]:
    current_encoders = _ENCODERS.get()
    if current_encoders is None:
        current_encoders = deque(_DEFAULT_ENCODERS)
        _ENCODERS.set(current_encoders)
    return current_encoders


def json_encode_default(value: Any) -> Any:
    """
    `default=` hook for `json.dumps` dispatching to the registered encoders.

    Raises:
        TypeError: If no encoder handles `value`.
    """
    for enc in get_encoders():
        if isinstance(enc, EncoderProtocol) and enc.is_type(value):
            return enc.serialize(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable: {value!r}")


def to_json(value: Any, *, indent: int | None = 2) -> str:
    """
    Canonical JSON text of `value`: sorted keys, non-finite floats written as
    strings so the output stays valid JSON.
    """
    return json.dumps(_finite(to_builtins(value)), sort_keys=True, indent=indent, allow_nan=False)


def to_builtins(value: Any) -> Any:
    """
    Recursively converts `value` to plain dicts, lists and scalars.
    """
    if isinstance(value, dict):
        return {str(k): to_builtins(v) for k, v in value.items()}
    if isinstance(value, Enum):
        return to_builtins(value.value)
    if isinstance(value, (str, int, float, bool, NoneType)):
        return value
    if isinstance(value, (list, tuple)):
        return [to_builtins(v) for v in value]
    return to_builtins(json_encode_default(value))


def _finite(value: Any) -> Any:
    if isinstance(value, float) and not np.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_finite(v) for v in value]
    return value


def _mold_primitive(struct: Any, value: Any) -> Any:
    if struct is bool:
        if isinstance(value, bool):
            return value
    elif struct is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif struct is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif struct is str:
        if isinstance(value, str):
            return value
    raise _fail(f"expected {struct.__name__}, got {type(value).__name__} ({value!r})")


def apply_structure(structure: Any, value: Any) -> Any:
    """
    Molds raw JSON `value` into `structure`.

    Handles `Annotated`, `Optional`/unions, `Literal`, primitives and every
    type owned by a registered molder.

    Raises:
        ConfigError: If the value does not fit the structure.
    """
    struct = get_args(structure)[0] if get_origin(structure) is Annotated else structure
    origin = get_origin(struct)

    if struct is Any:
        return value

    if origin is Union or origin is UnionType:
        arms = get_args(struct)
        if value is None:
            if NoneType in arms:
                return None
            raise _fail("null is not allowed")
        failures = []
        for arm in arms:
            if arm is NoneType:
                continue
            try:
                return apply_structure(arm, value)
            except ConfigError as exc:
                failures.append(exc.message)
        raise _fail(f"{value!r} matches none of the allowed types ({'; '.join(failures)})")

    if origin is Literal:
        choices = get_args(struct)
        if value in choices and not isinstance(value, bool):
            return value
        raise _fail(f"{value!r} is not one of {', '.join(repr(c) for c in choices)}")

    if struct in (bool, int, float, str):
        return _mold_primitive(struct, value)

    if value is None:
        raise _fail("null is not allowed")

    for enc in get_encoders():
        if isinstance(enc, MoldingProtocol) and enc.is_type_structure(struct):
            return enc.encode(struct, value)
    return value
