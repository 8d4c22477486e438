from pathlib import Path
from typing import Iterable, List, Union

import lmdb
from jina.logging.logger import JinaLogger

from ..jobs import Report, emit, parse_report
from .base import ReportStorage


class LMDBStorage(ReportStorage):
    def __init__(self, path: str, map_size: int = 2**30):
        self._path = path
        self._map_size = map_size
        self.logger = JinaLogger(self.__class__.__name__)
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self._env = self.open(path)

    def open(self, db_path: str):
        return lmdb.Environment(
            db_path,
            map_size=self._map_size,
            subdir=False,
            readonly=False,
            metasync=True,
            sync=True,
            map_async=False,
            mode=493,
            create=True,
            readahead=True,
            writemap=False,
            meminit=True,
            max_readers=126,
            max_dbs=0,  # means only one db
            max_spare_txns=1,
            lock=True,
        )

    def put(self, reports: Iterable[Report]):
        count = 0
        with self._env.begin(write=True) as txn:
            for report in reports:
                txn.put(
                    report.algebra_hash.encode(),
                    emit(report, 'machine').encode('utf-8'),
                    overwrite=True,
                )
                count += 1
        self.logger.info(f'Archive {count} reports')

    def update(self, reports: Iterable[Report]):
        with self._env.begin(write=True) as txn:
            for report in reports:
                old_value = txn.replace(
                    report.algebra_hash.encode(), emit(report, 'machine').encode('utf-8')
                )
                if not old_value:
                    txn.abort()
                    raise ValueError(
                        f'The report ({report.algebra_hash}) does not exist in the archive!'
                    )

    def delete(self, keys: Union[str, List[str]]):
        if isinstance(keys, str):
            keys = [keys]
        with self._env.begin(write=True) as txn:
            for key in keys:
                txn.delete(key.encode())

    def get(self, keys: Union[str, List[str]]) -> List[Report]:
        if isinstance(keys, str):
            keys = [keys]
        reports = []
        with self._env.begin(write=False) as txn:
            for key in keys:
                buffer = txn.get(key.encode())
                if buffer:
                    reports.append(parse_report(bytes(buffer).decode('utf-8')))
        return reports

    def keys(self) -> List[str]:
        with self._env.begin(write=False) as txn:
            return [bytes(key).decode() for key in txn.cursor().iternext(keys=True, values=False)]

    def clear(self):
        with self._env.begin(write=True) as txn:
            txn.drop(self._env.open_db(txn=txn), delete=False)
        self.logger.info('Clear the report archive')

    @property
    def stat(self):
        with self._env.begin(write=False) as txn:
            return txn.stat()

    @property
    def size(self):
        return self.stat['entries']

    def batched_iterator(self, batch_size: int = 1):
        batch = []
        with self._env.begin(write=False) as txn:
            for value in txn.cursor().iternext(keys=False, values=True):
                batch.append(parse_report(bytes(value).decode('utf-8')))
                if len(batch) == batch_size:
                    yield batch
                    batch = []
        if batch:
            yield batch

    def close(self):
        self._env.close()
