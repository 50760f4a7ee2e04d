import logging
import os
import sys
import tempfile
import unittest
from unittest.mock import patch

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))
from wbpinn.solver import logger, main  # noqa E402

QUICK_YAML = """EPOCHS: 1
N_INTERIOR: 10
N_INITIAL: 5
N_BOUNDARY: 3
REF_CELLS: 20
LOG_EVERY: 0
"""


@patch('wbpinn.solver.main.RunInfo')
class TestMain(unittest.TestCase):

    """
    ************************************************************
    Test - main
    test_entry_train - check the train arguments
    test_entry_requires_command - check a missing subcommand
    test_reference_command - check the reference CSV and log
    test_train_command - check the training artifacts
    test_compare_missing_dir - check a missing output directory
    test_selftest_failures - check the selftest exit status
    ************************************************************
    """
    def tearDown(self):
        logger.clean_loggers()

    def write_config(self, tmp_dir):
        path = os.path.join(tmp_dir, "quick.yaml")
        with open(path, "w") as config_file:
            config_file.write(QUICK_YAML)
        return path

    def test_entry_train(self, mock_info):
        """
        CHECK "entry" parses the train subcommand
        """
        args = main.entry(['train', '--case', '2', '--out', 'runs'])
        self.assertEqual((args.command, args.case, args.out, args.config), ('train', 2, 'runs', None))

    def test_entry_requires_command(self, mock_info):
        """
        CHECK "entry" exits without a subcommand or with an unknown case
        """
        with patch('sys.stderr'):
            with self.assertRaises(SystemExit):
                main.entry([])
            with self.assertRaises(SystemExit):
                main.entry(['train', '--case', '4'])

    def test_reference_command(self, mock_info):
        """
        CHECK "main" reference writes one row per cell
        """
        with tempfile.TemporaryDirectory() as tmp_dir:
            out = os.path.join(tmp_dir, "ref.csv")
            with patch('builtins.print'):
                status = main.main(['reference', '--case', '3', '--cells', '20', '--t-end', '0.1', '--out', out])
            self.assertEqual(status, 0)
            with open(out) as profile:
                lines = profile.read().splitlines()
            self.assertEqual(lines[0], "x,u")
            self.assertEqual(len(lines), 21)
            self.assertTrue(os.path.isfile(os.path.join(tmp_dir, "reference_case3.log")))
            mock_info.return_value.get_values.assert_called_once()

    def test_train_command(self, mock_info):
        """
        CHECK "main" train writes history, checkpoint and config
        """
        with tempfile.TemporaryDirectory() as tmp_dir:
            config = self.write_config(tmp_dir)
            with patch('builtins.print'):
                status = main.main(['train', '--case', '1', '--config', config, '--out', tmp_dir])
            self.assertEqual(status, 0)
            for name in ("case1_loss_history.csv", "case1_params.txt", "config.yaml"):
                self.assertTrue(os.path.isfile(os.path.join(tmp_dir, name)), name)
            with open(os.path.join(tmp_dir, "case1_loss_history.csv")) as history:
                self.assertEqual(len(history.read().splitlines()), 3)

    def test_compare_missing_dir(self, mock_info):
        """
        CHECK "main" returns 1 for a missing output directory
        """
        with tempfile.TemporaryDirectory() as tmp_dir:
            with patch('builtins.print') as mock_print:
                status = main.main(['compare', '--case', '1', '--out', os.path.join(tmp_dir, "missing")])
        self.assertEqual(status, 1)
        self.assertIn("does not exist", mock_print.call_args[0][0])

    def test_selftest_failures(self, mock_info):
        """
        CHECK "main" selftest returns 1 when a check fails and 0 otherwise, one console handler after repeated runs
        """
        with patch('builtins.print'):
            with patch('wbpinn.solver.main.run_selftest', return_value=2):
                self.assertEqual(main.main(['selftest']), 1)
            with patch('wbpinn.solver.main.run_selftest', return_value=0):
                self.assertEqual(main.main(['selftest']), 0)
        self.assertEqual(len(logging.getLogger("WBPINN").handlers), 1)


if __name__ == '__main__':
    unittest.main()
