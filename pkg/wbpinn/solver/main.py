#!/usr/bin/env python3
"""
The command line runner for WBPINN

    python -m wbpinn.solver.main train --case 1 --out runs/case1
    python -m wbpinn.solver.main reference --case 3 --cells 2000 --t-end 0.5 --out ref.csv
    python -m wbpinn.solver.main compare --case 2 --out runs/case2 --plot-data
    python -m wbpinn.solver.main selftest
"""
import sys
import argparse
import datetime
import logging
import os

import wbpinn.config.config as cfg
from wbpinn.solver import fv_reference, harness, logger, network, pinn, utils
from wbpinn.solver.RunInfo import RunInfo
from wbpinn.solver.cases import CASES, get_case
from wbpinn.solver.flux import burgers
from wbpinn.solver.selftest import run_selftest


def entry(argv=None):
    """ Entry to program, parses arguments"""
    parser = argparse.ArgumentParser(description='Train and compare weak boundary PINNs for Burgers equation')
    subparsers = parser.add_subparsers(dest='command', required=True)

    train_parser = subparsers.add_parser('train', help='Train the network for one test case')
    train_parser.add_argument('--case', type=int, choices=sorted(CASES), required=True)
    train_parser.add_argument('--config', help='Flat yaml config file', required=False)
    train_parser.add_argument('--out', help='Output directory', default='.')

    reference_parser = subparsers.add_parser('reference', help='Solve the Godunov reference for one test case')
    reference_parser.add_argument('--case', type=int, choices=sorted(CASES), required=True)
    reference_parser.add_argument('--cells', type=int, help='Number of cells, REF_CELLS when omitted', required=False)
    reference_parser.add_argument('--t-end', type=float, required=True)
    reference_parser.add_argument('--out', help='Output CSV file', required=True)
    reference_parser.add_argument('--config', help='Flat yaml config file', required=False)

    compare_parser = subparsers.add_parser('compare', help='Train, solve the reference and compare')
    compare_parser.add_argument('--case', type=int, choices=sorted(CASES), required=True)
    compare_parser.add_argument('--config', help='Flat yaml config file', required=False)
    compare_parser.add_argument('--out', help='Output directory', required=True)
    compare_parser.add_argument('--plot-data', action='store_true', help='Write one panel file per evaluation time')

    subparsers.add_parser('selftest', help='Run the fast property checks')
    return parser.parse_args(argv)


def run_train(args, config):
    train_cfg = pinn.TrainConfig.from_mapping(config).validate()
    params, history = pinn.train(burgers(), get_case(args.case), train_cfg)
    history_path = os.path.join(args.out, f"case{args.case}_loss_history.csv")
    pinn.write_history_csv(history_path, history)
    network.save_checkpoint(os.path.join(args.out, f"case{args.case}_params.txt"), params)
    cfg.write_config(os.path.join(args.out, "config.yaml"), config)
    utils.console(f"Case {args.case}: final loss {history[-1].total:.4e}", error=False)
    return 0


def run_reference(args, config):
    case = get_case(args.case)
    cells = args.cells if args.cells is not None else config['ref_cells']
    grid = fv_reference.Grid1D(case.domain[0], case.domain[1], cells)
    field = fv_reference.solve_to(burgers(), grid, case.u0, case.boundary_data, args.t_end, config['cfl'])
    fv_reference.write_profile_csv(args.out, grid, field)
    utils.console(f"Reference for case {args.case} at t = {args.t_end:g} on {cells} cells", error=False)
    return 0


def run_compare(args, config):
    train_cfg = pinn.TrainConfig.from_mapping(config).validate()
    rep_early, rep_late, artifacts = harness.run_case(args.case, train_cfg, config['ref_cells'], args.out,
                                                      config['cfl'], config['jump_threshold'], args.plot_data,
                                                      config)
    utils.console(utils.report_table(args.case, [rep_early, rep_late]))
    for name, path in artifacts.items():
        logging.info(f"Artifact {name}: {path}")
    return 0


COMMANDS = {
    'train': run_train,
    'reference': run_reference,
    'compare': run_compare,
}


def main(argv=None):
    args = entry(argv)
    wbpinn_log = logger.create_logger("WBPINN", logging.INFO, True)

    if args.command == 'selftest':
        logger.clean_loggers()
        failures = run_selftest()
        if failures:
            utils.console(f"{failures} selftest check(s) failed", error=True)
            return 1
        return 0

    try:
        config = cfg.load_config(getattr(args, 'config', None))
        out_dir = os.path.dirname(os.path.abspath(args.out)) if args.command == 'reference' else args.out
        if not os.path.isdir(out_dir):
            raise harness.OutputDirectoryError(out_dir)
        log_file = logger.setup_logging(f"{args.command}_case{args.case}", out_dir, config)
        wbpinn_log.info(f"Logging to {log_file}")
        RunInfo().get_values()
        logging.info(f"************* Starting {args.command} at {datetime.datetime.now()} *************")
        utils.log_config_params(config)
        return COMMANDS[args.command](args, config)
    except Exception as error:
        logging.error(error, exc_info=True)
        logging.error("A fatal error has occurred and WBPINN is exiting.  See traceback above for details.")
        utils.console(f"WBPINN failed: {error}", error=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
