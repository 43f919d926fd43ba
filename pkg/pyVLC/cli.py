# MIT License
# Copyright (c) 2020, pyVLC developers
# All rights reserved.
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
"""
``pyvlc`` command line: channel matrix, LED curve fit, SER sweeps, constellation dumps, complexity report
"""
import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from . import __version__
from .config import MAX_SEED, load_config
from .exception import PyVLCException
from .frontend import DEFAULT_IV_TABLE, DEFAULT_ORDER, fit_polynomial_iv, read_iv_table
from .handler import PrintHandler
from .handler.csv_handler import CSVHandler, FORMAT_VERSION, trace_to_csv
from .receiver.circulant import complexity_report
from .receiver.model_file import save_model
from .experiment import dump_constellation, run_ser_sweep, train_at

logger = logging.getLogger(__name__)

PROG = 'pyvlc'


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer : {text}') from None
    if not 0 <= value < MAX_SEED:
        raise argparse.ArgumentTypeError(f'seed must fit in 64 unsigned bits : {text}')
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer : {text}') from None
    if value < 1:
        raise argparse.ArgumentTypeError(f'must be >= 1 : {text}')
    return value


def _emit(text: str, output: Optional[str]):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, 'w') as output_file:
            output_file.write(text)
        logger.info('wrote %s', output)


def _load(args):
    return load_config(args.config, getattr(args, 'seed', None))


def cmd_channel(args):
    channel = _load(args).channel()
    _emit(f'# format={FORMAT_VERSION}\n' + channel.to_csv(), args.output)


def cmd_fit_nonlinearity(args):
    table = read_iv_table(args.iv_table)
    _emit(fit_polynomial_iv(table, args.order).to_text(), args.output)


def cmd_ser_sweep(args):
    config = _load(args)
    if args.receivers is not None:
        config = replace(config, receivers=tuple(name for name in args.receivers.split(',') if name.strip()))
    trace = run_ser_sweep(config, workers=args.workers, timing=args.timing)
    if args.table:
        PrintHandler().process(trace)
    elif args.output is not None:
        handler = CSVHandler(args.output, config.digest(), config.master_seed, args.timing)
        handler.process(trace)
        handler.save_data()
    else:
        _emit(trace_to_csv(trace, config.digest(), config.master_seed, args.timing), None)
    for receiver, low, high in trace.check_monotonic():
        logger.warning('%s SER increases from %s dB to %s dB beyond Monte-Carlo noise', receiver, low, high)


def cmd_constellation(args):
    dump = dump_constellation(_load(args), args.receiver, args.snr, args.symbols)
    _emit(dump.to_csv(), args.output)


def cmd_complexity(args):
    report = complexity_report(args.hidden, args.inputs, args.outputs)
    _emit(report.to_csv() if args.csv else report.to_table(), args.output)


def cmd_train(args):
    receiver = train_at(_load(args), args.receiver, args.snr)
    save_model(receiver.model, args.model)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description='LED MIMO visible light link simulator')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for debug')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    def add_command(name, func, help_text, config=True, seed=False):
        sub = subparsers.add_parser(name, help=help_text)
        if config:
            sub.add_argument('--config', metavar='FILE', help='experiment configuration (bundled scenario if omitted)')
        if seed:
            sub.add_argument('--seed', type=_seed, help='override the master seed')
        sub.add_argument('-o', '--output', metavar='FILE', help='output file (standard output if omitted)')
        sub.set_defaults(func=func)
        return sub

    add_command('channel', cmd_channel, 'write the channel matrix as CSV', seed=True)

    fit = add_command('fit-nonlinearity', cmd_fit_nonlinearity, 'fit the LED polynomial on an I-V table',
                      config=False)
    fit.add_argument('--iv-table', metavar='FILE', default=DEFAULT_IV_TABLE, help='volts,amps CSV')
    fit.add_argument('--order', type=_positive, default=DEFAULT_ORDER)

    sweep = add_command('ser-sweep', cmd_ser_sweep, 'SER versus SNR of every configured receiver', seed=True)
    sweep.add_argument('--receivers', metavar='LIST', help='comma separated receivers, overrides the config')
    sweep.add_argument('--workers', type=_positive, help='SNR points evaluated concurrently')
    sweep.add_argument('--timing', action='store_true', help='fill the wall_time_s column')
    sweep.add_argument('--table', action='store_true', help='print a human readable table instead of CSV')

    constellation = add_command('constellation', cmd_constellation, 'dump pre decision soft values', seed=True)
    constellation.add_argument('--receiver', default='ELM')
    constellation.add_argument('--snr', type=float, default=45.0, help='SNR in dB')
    constellation.add_argument('--symbols', type=_positive, default=2000, help='symbols per LED')

    complexity = add_command('complexity', cmd_complexity, 'dense versus FFT multiplication count', config=False)
    complexity.add_argument('--hidden', type=_positive, required=True, help='hidden nodes L')
    complexity.add_argument('--inputs', type=_positive, required=True, help='photodiodes N_r')
    complexity.add_argument('--outputs', type=_positive, help='LEDs N_t, adds the dense inference count')
    complexity.add_argument('--csv', action='store_true')

    train = add_command('train', cmd_train, 'train an ELM receiver and save its model file', seed=True)
    train.add_argument('--receiver', choices=['ELM', 'CELM'], default='ELM')
    train.add_argument('--snr', type=float, default=45.0, help='SNR in dB')
    train.add_argument('--model', metavar='FILE', required=True, help='model file to write')
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def main(argv: Optional[List[str]] = None) -> int:
    """
    :return: 0 on success, 1 when the command fails; usage errors exit with 2
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        args.func(args)
    except (PyVLCException, OSError) as error:
        sys.stderr.write(f'{PROG}: error: {error}\n')
        return 1
    return 0
