import argparse
import configparser
import json
from typing import Dict, Iterator, List

from numpy import mean


def read_events(path:str) -> Iterator[dict]:
    """
    Yield the events of a JSON-lines events file, skipping lines that are not events
    """
    with open(path, "r") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            try:
                event = json.loads(line)
            except json.JSONDecodeError:
                continue
            if isinstance(event, dict) and {"service", "function", "event"} <= event.keys():
                yield event


def elapsed_times(path:str) -> Dict[str, List[float]]:
    """
    Seconds of process time per "<service>.<function>", taken from the *_time events
    """
    samples: Dict[str, List[float]] = {}
    for event in read_events(path):
        if not event["function"].endswith("_time"):
            continue
        try:
            seconds = int(event["event"]) / 1e9
        except ValueError:
            continue
        key = f"{event['service']}.{event['function'][:-len('_time')]}"
        samples.setdefault(key, []).append(seconds)
    return samples


def summary_lines(samples: Dict[str, List[float]]) -> List[str]:
    return [
        f"{key} = {mean(values)} s over {len(values)} runs"
        for key, values in sorted(samples.items())
    ]


if __name__ == "__main__":
    configs = configparser.ConfigParser()
    configs.read("./config.ini")
    default_path = configs.get("events", "events_file", fallback="") or "events.jsonl"

    parser = argparse.ArgumentParser(description="Summarize the elapsed times of an events file")
    parser.add_argument("path", nargs="?", default=default_path)
    args = parser.parse_args()

    try:
        for line in summary_lines(elapsed_times(args.path)):
            print(line)
    except FileNotFoundError:
        print(f"Error: The file '{args.path}' was not found.")
