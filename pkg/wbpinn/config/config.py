#!/usr/bin/python3
"""yaml config loader"""
import json
import logging
import os

import yaml

import wbpinn.config.config_utils as config_utils

CONFIG_LOCATION = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", "setup"))
wbpinn_config_path = os.path.join(CONFIG_LOCATION, "wbpinn.yaml")
comments_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "comments.json")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Defaults in the order they are written back out
DEFAULTS = {
    "epsilon": 0.01,
    "learning_rate": 0.001,
    "epochs": 5000,
    "seed": 42,
    "t_final": 1.0,
    "residual_form": "nonconservative",
    "w_res": 1.0,
    "w_ic": 1.0,
    "w_bc": 1.0,
    "n_interior": 10000,
    "n_initial": 256,
    "n_boundary": 128,
    "ref_cells": 2000,
    "cfl": 0.9,
    "jump_threshold": 0.05,
    "log_every": 500,
    "loglevel": "INFO",
    "date_format": "%m-%d-%Y %H:%M:%S",
}


class ConfigError(ValueError):
    """Raised when a config file holds an unknown key or a value of the wrong type.

    Attributes:
        message: the explanation of the error
    """

    def __init__(self, message):
        self.message = message
        logging.error(self.message)
        super().__init__(self.message)


def _load_config(fp):
    with open(fp, "r") as yaml_file:
        config = yaml.safe_load(yaml_file)
    return config or {}


def _coerce(key, value):
    """Coerce a raw yaml value to the type of its default"""
    default = DEFAULTS[key]
    if isinstance(value, bool) and isinstance(default, (int, float)):
        raise ConfigError(f"Config key '{key.upper()}' expects a number, got {value!r}")
    if key == "loglevel":
        level = str(value).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"Config key 'LOGLEVEL' must be one of {LOG_LEVELS}, got {value!r}")
        return level
    try:
        if isinstance(default, int):
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(f"{value} is not an integer")
            return int(value)
        if isinstance(default, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError) as error:
        raise ConfigError(f"Config key '{key.upper()}' has invalid value {value!r}: {error}") from error


def merge_config(values):
    """
    Merge a mapping of config keys over the defaults\n
    Keys are case-insensitive, unknown keys are an error\n
    :param values: mapping of key: value pairs
    :return: dict of every known key with lower-case names
    """
    merged = dict(DEFAULTS)
    for key, value in dict(values).items():
        name = str(key).lower()
        if name not in DEFAULTS:
            raise ConfigError(f"Unknown config key '{key}'")
        merged[name] = _coerce(name, value)
    return merged


def load_config(fp=None):
    """
    Load a config file and merge it over the defaults\n
    :param fp: path to a flat yaml file, None for defaults only
    :return: dict of every known key with lower-case names
    """
    if fp is None:
        return dict(DEFAULTS)
    raw = _load_config(fp)
    if not isinstance(raw, dict):
        raise ConfigError(f"Config file {fp} is not a flat key: value mapping")
    logging.debug(f"Loaded {len(raw)} keys from {fp}")
    return merge_config(raw)


def write_config(fp, values):
    """
    Write a resolved config back out as commented yaml\n
    :param fp: destination path
    :param values: mapping of config keys (any case)
    :return: the text written
    """
    merged = merge_config(values)
    with open(comments_path, "r") as comments_file:
        comments = json.load(comments_file)

    wbpinn_cfg = comments['WBPINN_CFG_GROUPS']['BEGIN'] + "\n"
    for key, value in merged.items():
        upper = key.upper()
        # Add any grouping comments
        wbpinn_cfg += config_utils.wbpinn_yaml_check_groups(comments, upper)
        # Check for comments for this key in comments.json, add them if they exist
        try:
            wbpinn_cfg += "\n" + comments[upper] + "\n" if comments[upper] != "" else "\n"
        except KeyError:
            wbpinn_cfg += "\n"
        wbpinn_cfg += config_utils.wbpinn_yaml_format_value(upper, value)

    with open(fp, "w") as settings_file:
        settings_file.write(wbpinn_cfg)
    return wbpinn_cfg
