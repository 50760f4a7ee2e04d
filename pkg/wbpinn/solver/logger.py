#!/usr/bin/env python3
"""
Logging setup for WBPINN runs
"""
import os
import logging

VERBOSE_FORMAT = '[%(asctime)s] %(levelname)s WBPINN: %(module)s.%(funcName)s %(message)s'
SHORT_FORMAT = '[%(asctime)s] %(levelname)s WBPINN: %(message)s'


def setup_logging(run_name, out_dir, config):
    """Attach a per-run log file to the root logger and return its full path\n
    DEBUG runs log the module and function of every line
    """
    log_full = os.path.join(out_dir, f"{run_name.replace('/', '_')}.log")
    # Remove any root loggers
    clean_loggers()
    if config['loglevel'] == "DEBUG":
        logging.basicConfig(filename=log_full, format=VERBOSE_FORMAT,
                            datefmt=config['date_format'], level=config['loglevel'])
    else:
        logging.basicConfig(filename=log_full, format=SHORT_FORMAT,
                            datefmt=config['date_format'], level=config['loglevel'])
    return log_full


def clean_loggers():
    """
    Remove any handlers left on the root logger by a previous run
    :return: None
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()


def create_logger(app_name, log_level=logging.INFO, stdout=True, file=None):
    """
    Create a named logger writing to stdout and optionally a file\n
    :param app_name: app name
    :param log_level: logging log level
    :param stdout: log to stdout
    :param file: path of a log file, None to skip
    :return: logging object
    """
    logger = logging.getLogger(app_name)
    logger.setLevel(log_level)
    # already configured by an earlier run in this process
    if logger.handlers:
        return logger
    formatter = logging.Formatter(VERBOSE_FORMAT)

    if file:
        file_handler = logging.FileHandler(file)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    if stdout:
        stream_print = logging.StreamHandler()
        stream_print.setLevel(log_level)
        stream_print.setFormatter(formatter)
        logger.addHandler(stream_print)

    return logger
