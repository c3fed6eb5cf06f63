import json
import os
from typing import Any, Callable, Dict, Optional, Tuple, Type

import jsonschema

from analysis_events.event_register import register_event
from qmlab.cli_exceptions import UnknownCommand

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "schemas")


def get_schema(command:str) -> Dict[str, Any]:
    with open(os.path.join(SCHEMA_DIR, f"{command}.json"), "r") as f:
        return json.load(f)


class CommandRegistry:
    """
    Maps command names to handlers and turns their outcome into a status dictionary

    A handler returns a JSON-able payload, which is checked against the command's
    output schema. Responses look like {"status_code": 200, "return": payload} or
    {"status_code": 400|500, "exception": message}; 400 marks usage errors (exceptions
    listed in usage_errors), 500 everything else.

    :param usage_errors: exception types caused by bad user input
    :type usage_errors: tuple of exception types

    :param hide_error_info: if True, messages of internal errors are not forwarded
    :type hide_error_info: bool
    """
    def __init__(
            self,
            usage_errors: Tuple[Type[Exception], ...]=(),
            hide_error_info:bool=False) -> None:
        self.usage_errors = usage_errors
        self.hide_error_info = hide_error_info
        self.func_name_to_func_and_schema_map: Dict[str, Dict[str, Any]] = {}

    def add_command(self, func_name:str, schema: Optional[Dict[str, Any]], func: Callable[[Any], Dict[str, Any]]):
        """
        Register a handler

        :param func_name: command name
        :type func_name: str

        :param schema: JSON schema of the handler's payload, None to skip the check
        :type schema: dict

        :param func: handler receiving the run configuration
        :type func: callable
        """
        self.func_name_to_func_and_schema_map[func_name] = {
            "func": func,
            "schema": schema,
        }

    @property
    def commands(self):
        return sorted(self.func_name_to_func_and_schema_map)

    def execute(self, func_name:str, argument:Any) -> Dict[str, Any]:
        """
        Run a registered handler

        :param func_name: command name
        :type func_name: str

        :param argument: passed to the handler unchanged
        :type argument: Any

        :return: status dictionary
        :rtype: dict
        """
        register_event("qmlab", func_name, "Started")
        try:
            func_and_schema = self.func_name_to_func_and_schema_map.get(func_name)
            if func_and_schema is None:
                raise UnknownCommand(func_name)
            returned = func_and_schema["func"](argument)
            if func_and_schema.get("schema") is not None:
                jsonschema.validate(instance=returned, schema=func_and_schema["schema"])
            response = {"status_code": 200, "return": returned}

        except UnknownCommand as e:
            response = {"status_code": 400, "exception": f"{e}"}

        except jsonschema.ValidationError as e:
            response = {"status_code": 500, "exception": f"{func_name} produced output outside its schema: {e.message}"}

        except self.usage_errors as e:
            response = {"status_code": 400, "exception": f"{e}"}

        except Exception as e:
            if self.hide_error_info:
                response = {"status_code": 500, "exception": f"{func_name} Internal error"}
            else:
                response = {"status_code": 500, "exception": f"{func_name}: {e}"}

        register_event("qmlab", func_name, f"Finished with status {response['status_code']}")
        return response
