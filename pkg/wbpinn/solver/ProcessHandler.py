"""
Function definition
  Wrapper for the python subprocess module
"""
import logging
import subprocess


def run_subprocess(cmd, in_shell):
    """
    Run a command and return its output, None when it fails
    """
    try:
        output = subprocess.check_output(
            cmd,
            shell=in_shell,
            stderr=subprocess.DEVNULL
        )
    except (subprocess.CalledProcessError, FileNotFoundError) as error:
        logging.debug(f"Error executing command {cmd}")
        logging.debug(f"Subprocess error {error}")
        output = None

    return output
