#!/usr/bin/env python3
"""Collection of console and reporting helpers"""
import logging

from colorama import Fore, Style
from prettytable import PrettyTable


def console(msg, error=None):
    """
    Print message to the console with colour\n
    :param msg: message string
    :param error: None for plain output, True for an error tag, False for an ok tag
    """
    if error is None:
        print(msg)
    elif error:
        print(f"{msg}\t[{Fore.RED}Error{Style.RESET_ALL}]")
    else:
        print(f"{msg}\t[{Fore.GREEN}Ok{Style.RESET_ALL}]")


def log_config_params(config):
    """log all config parameters"""
    logging.info("******************* Logging config parameters *******************")
    for key, value in config.items():
        logging.info(f"{key}: {value}")
    logging.info("******************* End of config parameters *******************")


def report_table(case_id, reports):
    """
    PrettyTable of the error reports of one case\n
    :param case_id: test case number
    :param reports: ErrorReport list
    :return: table as a string
    """
    pretty_table = PrettyTable()
    pretty_table.field_names = ["case", "t", "L1", "Linf", "Linf smooth", "shock pinn", "shock ref"]
    for report in reports:
        pretty_table.add_row([case_id, f"{report.t_eval:g}", f"{report.l1:.3e}", f"{report.linf:.3e}",
                              f"{report.linf_smooth:.3e}", f"{report.x_shock_pinn:.4f}", f"{report.x_shock_ref:.4f}"])
    return str(pretty_table.get_string())
