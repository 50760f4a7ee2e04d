"""
Class definition
 WBPINN run provenance: package, interpreter and library versions
"""
import os
import sys
import re
import getpass
import logging

import numpy as np

from wbpinn.solver import ProcessHandler

INSTALL_PATH = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


class RunInfo:
    version = "unknown"
    python_version = "unknown"
    numpy_version = "unknown"
    git_branch = ""
    git_commit = ""
    user = ""
    install_path = ""

    def __init__(self, install_path=INSTALL_PATH):
        self.install_path = install_path
        self.get_git_commit()
        self.get_version()
        self.get_python_version()
        self.get_numpy_version()
        self.get_user_details()

    def get_values(self):
        logging.info(f"WBPINN version: {self.version}")
        logging.info(f"Python version: {self.python_version}")
        logging.info(f"numpy version: {self.numpy_version}")
        logging.info(f"Git: {self.git_branch}@{self.git_commit}")
        logging.info(f"User is: {self.user}")

    def as_dict(self):
        return {"version": self.version, "python": self.python_version, "numpy": self.numpy_version,
                "git_branch": self.git_branch, "git_commit": self.git_commit, "user": self.user}

    def get_git_commit(self):
        """
        Current git branch and short commit of the install path
        """
        branch_len = 10
        cmd = f"cd {self.install_path} && git rev-parse --abbrev-ref HEAD && git log -1 --format=%h"
        git_output = ProcessHandler.run_subprocess(cmd, True)
        git_match = None
        if git_output:
            git_match = re.search(r"^(\S+)\n([a-f\d]{5,12})\s*$", git_output.decode("utf-8"))

        if git_match:
            (self.git_branch, self.git_commit) = git_match.groups()
            if len(self.git_branch) > branch_len:
                self.git_branch = self.git_branch[0:branch_len] + "..."
        else:
            self.git_branch = "unknown"
            self.git_commit = "unknown"

    def get_version(self):
        try:
            with open(os.path.join(self.install_path, 'VERSION')) as version_file:
                self.version = version_file.read().strip()
        except (OSError, IOError) as error:
            logging.info(f"WBPINN version error: {error}")
            self.version = "unknown"

    def get_python_version(self):
        version = sys.version
        if version:
            self.python_version = version.split()[0]
        else:
            self.python_version = "unknown"

    def get_numpy_version(self):
        self.numpy_version = getattr(np, "__version__", None) or "unknown"

    def get_user_details(self):
        """
        Get the user WBPINN is running as
        """
        try:
            user = getpass.getuser()
        except (KeyError, OSError):
            user = None
        if user:
            self.user = user
        else:
            self.user = "unknown"
