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
Seeded Monte-Carlo evaluation of the receivers.

Every random stream is drawn from ``SeedSequence(master_seed, spawn_key=(purpose, snr_key, chunk))``
with ``snr_key = round(snr_db * 1000) mod 2**32``, fed to PCG64. All receivers of one SNR point see the
same training frame and the same payload frames.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

import numpy

from .channel import ChannelMatrix
from .config import ExperimentConfig, snr_key
from .exception import PyVLCException
from .frontend import (LinkConfig, PamConstellation, PolynomialNonlinearity, TrainingSet, draw_symbol_frame,
                       make_training_set, transmit_frame)
from .receiver import Receiver, ReceiverFactory
from .ser_trace import ConstellationDump, SerRecord, SerTrace

logger = logging.getLogger(__name__)

# spawn key purposes
CALIBRATION = 0
TRAINING_SYMBOLS = 1
TRAINING_NOISE = 2
RECEIVER_INIT = 3
PAYLOAD_SYMBOLS = 4
PAYLOAD_NOISE = 5


def _seed_sequence(master_seed: int, purpose: int, snr_db: float, chunk: int) -> numpy.random.SeedSequence:
    return numpy.random.SeedSequence(master_seed, spawn_key=(purpose, snr_key(snr_db), chunk))


def derive_seed(master_seed: int, purpose: int, snr_db: float, chunk: int = 0) -> int:
    """
    :return: a 64 bit seed for one (purpose, SNR point, chunk) stream
    """
    seed = int(_seed_sequence(master_seed, purpose, snr_db, chunk).generate_state(1, numpy.uint64)[0])
    logger.debug('seed %d for purpose %d at %s dB chunk %d', seed, purpose, snr_db, chunk)
    return seed


def derive_rng(master_seed: int, purpose: int, snr_db: float, chunk: int = 0) -> numpy.random.Generator:
    return numpy.random.Generator(numpy.random.PCG64(_seed_sequence(master_seed, purpose, snr_db, chunk)))


class _Scene:
    """
    Channel, LED curve and constellation shared by every SNR point of an experiment
    """
    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.channel: ChannelMatrix = config.channel()
        self.nonlinearity: PolynomialNonlinearity = config.nonlinearity()
        self.constellation: PamConstellation = config.constellation()

    def link(self, snr_db: float) -> LinkConfig:
        seed = derive_seed(self.config.master_seed, CALIBRATION, snr_db)
        return LinkConfig(self.channel, self.nonlinearity, self.constellation, snr_db, seed)

    def payload(self, link: LinkConfig, length: int, chunk: int):
        master_seed = self.config.master_seed
        symbols = draw_symbol_frame(link.n_leds, length, link.constellation,
                                    derive_rng(master_seed, PAYLOAD_SYMBOLS, link.snr_db, chunk))
        received = transmit_frame(symbols, link, derive_rng(master_seed, PAYLOAD_NOISE, link.snr_db, chunk))
        return symbols, received

    def training(self, link: LinkConfig) -> TrainingSet:
        master_seed = self.config.master_seed
        return make_training_set(link, self.config.training_length,
                                 derive_rng(master_seed, TRAINING_SYMBOLS, link.snr_db),
                                 derive_rng(master_seed, TRAINING_NOISE, link.snr_db))

    def init_seed(self, link: LinkConfig) -> int:
        return derive_seed(self.config.master_seed, RECEIVER_INIT, link.snr_db)

    def trained_receivers(self, link: LinkConfig, names: Sequence[str], clock: Optional[Callable[[], float]]):
        """
        Train every receiver, a failure is logged and recorded instead of raised

        :return: (receiver, training time) pairs and the failed records by receiver name
        """
        training = self.training(link)
        init_seed = self.init_seed(link)
        trained, failed = [], {}
        for receiver in ReceiverFactory.create_receivers(names, self.config.receiver_settings()):
            start = clock() if clock is not None else None
            try:
                receiver.train(link, training, init_seed)
            except (PyVLCException, numpy.linalg.LinAlgError) as error:
                logger.warning('%s training failed at %s dB : %s', receiver.name, link.snr_db, error)
                failed[receiver.name] = SerRecord.failed(receiver.name, link.snr_db, str(error))
                continue
            elapsed = clock() - start if clock is not None else None
            trained.append((receiver, elapsed))
        return trained, failed


def _evaluate_point(scene: _Scene, snr_db: float, names: Sequence[str],
                    clock: Optional[Callable[[], float]]) -> List[SerRecord]:
    config = scene.config
    link = scene.link(snr_db)
    trained, failed = scene.trained_receivers(link, names, clock)
    errors = {receiver.name: 0 for receiver, _ in trained}
    times = {receiver.name: elapsed for receiver, elapsed in trained}

    for chunk, offset in enumerate(range(0, config.payload_symbols, config.payload_chunk)):
        length = min(config.payload_chunk, config.payload_symbols - offset)
        symbols, received = scene.payload(link, length, chunk)
        for receiver, _ in trained:
            if receiver.name in failed:
                continue
            start = clock() if clock is not None else None
            try:
                decisions = receiver.detect(received)
            except PyVLCException as error:
                logger.warning('%s detection failed at %s dB : %s', receiver.name, snr_db, error)
                failed[receiver.name] = SerRecord.failed(receiver.name, snr_db, str(error))
                continue
            if clock is not None:
                times[receiver.name] += clock() - start
            errors[receiver.name] += int(numpy.count_nonzero(decisions != symbols))

    decisions_count = config.payload_symbols * link.n_leds
    records = []
    for name in names:
        if name in failed:
            records.append(failed[name])
            continue
        record = SerRecord(name, snr_db, decisions_count, errors[name], times[name])
        if record.flag:
            logger.warning('%s at %s dB : SER %g from only %d errors', name, snr_db, record.ser, record.errors)
        records.append(record)
    logger.info('%s dB done : %s', snr_db, ', '.join(f'{r.receiver} {r.ser}' for r in records))
    return records


def run_ser_sweep(config: ExperimentConfig, workers: Optional[int] = None, timing: bool = False,
                  clock: Callable[[], float] = time.perf_counter) -> SerTrace:
    """
    Train and evaluate every configured receiver at every SNR point

    :param workers: number of SNR points evaluated concurrently (``config.workers`` if None)
    :param timing: measure training and detection wall time of each receiver
    :return: one record per (receiver, SNR), ordered by configured receiver then ascending SNR
    """
    scene = _Scene(config)
    workers = config.workers if workers is None else workers
    names = config.receivers
    clock = clock if timing else None
    snr_grid = sorted(config.snr_grid_db)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            points = list(executor.map(lambda snr: _evaluate_point(scene, snr, names, clock), snr_grid))
    else:
        points = [_evaluate_point(scene, snr, names, clock) for snr in snr_grid]

    trace = SerTrace(record for records in points for record in records)
    trace.sort(names)
    return trace


def _train_one(scene: _Scene, receiver_name: str, snr_db: float) -> Receiver:
    link = scene.link(snr_db)
    receiver = ReceiverFactory.create_receivers([receiver_name], scene.config.receiver_settings())[0]
    receiver.train(link, scene.training(link), scene.init_seed(link))
    return receiver


def train_at(config: ExperimentConfig, receiver_name: str, snr_db: float) -> Receiver:
    """
    Train one receiver on the training frame the sweep uses at ``snr_db``

    :raise NoSuchReceiverError: if the receiver name is unknown
    """
    return _train_one(_Scene(config), receiver_name, snr_db)


def dump_constellation(config: ExperimentConfig, receiver_name: str, snr_db: float,
                       n_symbols: int) -> ConstellationDump:
    """
    Soft outputs of one receiver on a payload frame drawn from the first payload stream of ``snr_db``.
    Dumps of different receivers with the same config and SNR share the same frame.
    """
    if n_symbols < 1:
        raise ValueError(f'n_symbols must be >= 1 : {n_symbols}')
    scene = _Scene(config)
    receiver = _train_one(scene, receiver_name, snr_db)
    symbols, received = scene.payload(receiver.get_link(), n_symbols, 0)
    return ConstellationDump(receiver.name, snr_db, receiver.soft_output(received), symbols)
