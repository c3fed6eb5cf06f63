import configparser
import json
import sys
import time as tm
from typing import Optional

_settings = {
    "register_events": False,
    "events_file": None,
}


def configure_events(register_events:bool, events_file:Optional[str]=None):
    """
    Set the defaults used by register_event when allow_registering is not given

    :param register_events: if False, events are dropped
    :type register_events: bool

    :param events_file: path of the JSON-lines file receiving events; standard error when empty
    :type events_file: str
    """
    _settings["register_events"] = register_events
    _settings["events_file"] = events_file or None


def configure_events_from_config(configs: configparser.ConfigParser):
    if not configs.has_section("events"):
        return
    configure_events(
        configs["events"].getboolean("register_events", fallback=False),
        configs["events"].get("events_file", fallback=None),
    )


def _publish_event(event:dict):
    line = json.dumps(event)
    path = _settings["events_file"]
    if path is None:
        print(line, file=sys.stderr)
        return
    with open(path, "a") as f:
        f.write(line + "\n")


def register_event(
        service_name:str,
        func_name:str,
        event_descr:str,
        allow_registering:Optional[bool]=None):
    """
    Used to register the occurence of an action in an analysis component for logging

    Events never go to standard output, so command output stays deterministic.

    :param service_name: identifies the origin that registered the event
    :type service_name: str

    :param func_name: identifies the function name where the event happened
    :type func_name: str

    :param event_descr: identifies and describes the event itself with a short text
    :type event_descr: str

    :param allow_registering: if False, will do nothing; None uses the configured default
    :type allow_registering: bool
    """
    if allow_registering is None:
        allow_registering = _settings["register_events"]

    if allow_registering:
        _publish_event(
            {
                "time": tm.time(),
                "service": service_name,
                "function": func_name,
                "event": event_descr,
            }
        )
