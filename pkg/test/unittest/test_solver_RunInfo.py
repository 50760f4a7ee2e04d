import os
import sys
import unittest
from unittest.mock import MagicMock, mock_open, patch

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))
from wbpinn.solver.RunInfo import RunInfo, INSTALL_PATH   # noqa E402


class TestRunInfo(unittest.TestCase):

    def setUp(self):
        self.run_info = RunInfo(INSTALL_PATH)

    """
    ************************************************************
    Test - get_git_commit
    test_get_git_commit_fail - check for bad value check
    test_get_git_commit_pass - check for normal behaviour
    test_get_git_commit_bounds_low - check for low values
    test_get_git_commit_bounds_high - check for high values
    test_get_git_commit_no_repo - check for a failed command
    ************************************************************
    """
    def test_get_git_commit_fail(self):
        """
        CHECK "get_git_commit" handles returning no value
        data check:
            branch: return unknown
            commit: return unknown
        """
        run_subprocess_mock = MagicMock()
        run_subprocess_mock.return_value = b" main\ncommit "
        with unittest.mock.patch('wbpinn.solver.ProcessHandler.run_subprocess',
                                 run_subprocess_mock):
            self.run_info.get_git_commit()

        self.assertEqual(self.run_info.git_branch, "unknown")
        self.assertEqual(self.run_info.git_commit, "unknown")

    def test_get_git_commit_pass(self):
        """
        CHECK "get_git_commit" handles returning correct values
        data check:
            branch: main
            commit: abc12de
        """
        run_subprocess_mock = MagicMock()
        run_subprocess_mock.return_value = b"main\nabc12de\n"
        with unittest.mock.patch('wbpinn.solver.ProcessHandler.run_subprocess',
                                 run_subprocess_mock):
            self.run_info.get_git_commit()

        self.assertEqual(self.run_info.git_branch, "main")
        self.assertEqual(self.run_info.git_commit, "abc12de")

    def test_get_git_commit_bounds_low(self):
        """
        CHECK "get_git_commit" handles bounds low
        data check:
            branch: m
            commit: a
        """
        run_subprocess_mock = MagicMock()
        run_subprocess_mock.return_value = b"m\na"
        with unittest.mock.patch('wbpinn.solver.ProcessHandler.run_subprocess',
                                 run_subprocess_mock):
            self.run_info.get_git_commit()

        self.assertEqual(self.run_info.git_branch, "unknown")
        self.assertEqual(self.run_info.git_commit, "unknown")

    def test_get_git_commit_bounds_high(self):
        """
        CHECK "get_git_commit" handles bounds high
        data check:
            branch: thequickbrownfoxjumpedoverthelazydog
            commit: a1b2c3d4e5f6
        """
        branch_len = 10
        data_check_branch = "thequickbrownfoxjumpedoverthelazydog"
        data_check_commit = "a1b2c3d4e5f6"
        run_subprocess_mock = MagicMock()
        run_subprocess_mock.return_value = b"thequickbrownfoxjumpedoverthelazydog\na1b2c3d4e5f6"
        with unittest.mock.patch('wbpinn.solver.ProcessHandler.run_subprocess',
                                 run_subprocess_mock):
            self.run_info.get_git_commit()

        self.assertEqual(self.run_info.git_branch, data_check_branch[0:branch_len] + "...")
        self.assertEqual(self.run_info.git_commit, data_check_commit)

    def test_get_git_commit_no_repo(self):
        """
        CHECK "get_git_commit" handles the command failing
        data check:
            output: None
        """
        with unittest.mock.patch('wbpinn.solver.ProcessHandler.run_subprocess',
                                 MagicMock(return_value=None)):
            self.run_info.get_git_commit()

        self.assertEqual(self.run_info.git_branch, "unknown")
        self.assertEqual(self.run_info.git_commit, "unknown")

    """
    ************************************************************
    Test - get_version
    test_get_version_nofile - check for no file
    test_get_version_pass - check for normal behaviour
    test_get_version_bounds_high - check for high values
    ************************************************************
    """
    def test_get_version_nofile(self):
        """
        CHECK "get_version" handles no file found
        data check:
            version: return unknown
        """
        with patch("builtins.open",
                   mock_open()) as mock_file:
            mock_file.side_effect = FileNotFoundError("File Not Found")
            self.run_info.get_version()

            self.assertEqual(self.run_info.version, "unknown")

    def test_get_version_pass(self):
        """
        CHECK "get_version" handles returning correct values
        data check:
            version: 1.2.3
        """
        data_check = "1.2.3"
        with unittest.mock.patch('builtins.open',
                                 unittest.mock.mock_open(read_data=data_check + "\n")):
            self.run_info.get_version()

        self.assertEqual(self.run_info.version, data_check)

    def test_get_version_bounds_high(self):
        """
        CHECK "get_version" handles bounds high
        data check:
            version: 1000.1000
        """
        data_check = "1000.1000"
        with unittest.mock.patch('builtins.open',
                                 unittest.mock.mock_open(read_data=data_check)):
            self.run_info.get_version()

        self.assertEqual(self.run_info.version, data_check)

    """
    ************************************************************
    Test - get_python_version / get_numpy_version
    test_get_python_version_fail - check for bad value check
    test_get_python_version_pass - check for normal behaviour
    test_get_numpy_version_fail - check for a missing attribute
    ************************************************************
    """
    def test_get_python_version_fail(self):
        """
        CHECK "get_python_version" handles none values
        data check:
            version: none
        """
        with unittest.mock.patch('sys.version', None):
            self.run_info.get_python_version()

        self.assertEqual(self.run_info.python_version, "unknown")

    def test_get_python_version_pass(self):
        """
        CHECK "get_python_version" keeps only the version number
        data check:
            version: 3.11.4 (main, Jun  7 2023)
        """
        with unittest.mock.patch('sys.version', "3.11.4 (main, Jun  7 2023)"):
            self.run_info.get_python_version()

        self.assertEqual(self.run_info.python_version, "3.11.4")

    def test_get_numpy_version_fail(self):
        """
        CHECK "get_numpy_version" handles an empty version
        data check:
            version: ""
        """
        with unittest.mock.patch('numpy.__version__', ""):
            self.run_info.get_numpy_version()

        self.assertEqual(self.run_info.numpy_version, "unknown")

    """
    ************************************************************
    Test - get_user_details
    get_user_details_fail - check for bad value check
    get_user_details_pass - check for normal behaviour
    get_user_details_error - check for getuser raising
    ************************************************************
    """
    def test_get_user_details_fail(self):
        """
        CHECK "get_user_details" handles none values
        data check:
            user:
        """
        getuser_mock = MagicMock(return_value=None)
        with unittest.mock.patch('getpass.getuser', getuser_mock):
            self.run_info.get_user_details()

        self.assertEqual(self.run_info.user, 'unknown')

    def test_get_user_details_pass(self):
        """
        CHECK "get_user_details" handles returning correct values
        data check:
            user: user1
        """
        getuser_mock = MagicMock(return_value="user1")
        with unittest.mock.patch('getpass.getuser', getuser_mock):
            self.run_info.get_user_details()

        self.assertEqual(self.run_info.user, "user1")

    def test_get_user_details_error(self):
        """
        CHECK "get_user_details" handles getuser raising
        data check:
            user: unknown
        """
        getuser_mock = MagicMock(side_effect=KeyError("uid not found"))
        with unittest.mock.patch('getpass.getuser', getuser_mock):
            self.run_info.get_user_details()

        self.assertEqual(self.run_info.user, 'unknown')

    """
    ************************************************************
    Test - get_values
    test_get_values_pass - check output is correct
    ************************************************************
    """
    def test_get_values_pass(self):
        """
        CHECK "get_values" handles printing output
        data check: (values as below)
        """
        self.run_info.version = 'mock_version'
        self.run_info.python_version = 'mock_python_version'
        self.run_info.numpy_version = 'mock_numpy_version'
        self.run_info.git_branch = 'main'
        self.run_info.git_commit = 'abc12de'
        self.run_info.user = 'mock_user'

        with self.assertLogs(level='INFO') as cm:
            self.run_info.get_values()

        self.assertIn("INFO:root:WBPINN version: mock_version", cm.output)
        self.assertIn("INFO:root:Python version: mock_python_version", cm.output)
        self.assertIn("INFO:root:numpy version: mock_numpy_version", cm.output)
        self.assertIn("INFO:root:Git: main@abc12de", cm.output)
        self.assertIn("INFO:root:User is: mock_user", cm.output)

    def test_as_dict(self):
        """
        CHECK "as_dict" carries every recorded field
        """
        values = self.run_info.as_dict()
        self.assertEqual(set(values), {"version", "python", "numpy", "git_branch", "git_commit", "user"})
        self.assertEqual(values["version"], self.run_info.version)


if __name__ == '__main__':
    unittest.main()
