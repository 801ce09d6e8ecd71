from __future__ import annotations

import os
from typing import TYPE_CHECKING, Any, cast

from monkay import Monkay

ENVIRONMENT_VARIABLE = "ODDEVEN_SETTINGS_MODULE"

if TYPE_CHECKING:
    from oddeven.conf.global_settings import Settings

monkay: Monkay[None, Settings] = Monkay(
    globals(),
    settings_path=lambda: os.environ.get(ENVIRONMENT_VARIABLE, "oddeven.conf.global_settings.Settings"),
)


class SettingsForward:
    """
    Proxy forwarding attribute access to the settings object loaded by Monkay.

    The real settings are only imported on first access, so the module named in
    `ODDEVEN_SETTINGS_MODULE` can be swapped (tests do this) before anything
    reads a value.
    """

    def __getattribute__(self, name: str) -> Any:
        return getattr(monkay.settings, name)

    def __setattr__(self, name: str, value: Any) -> None:
        return setattr(monkay.settings, name, value)


settings: Settings = cast("Settings", SettingsForward())
