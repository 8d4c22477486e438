from .lmdb import LMDBStorage
from .sql import SQLStorage


class StorageFactory:
    @staticmethod
    def open(backend: str, **kwargs):
        if backend == 'lmdb':
            db_path = kwargs.pop('db_path')
            return LMDBStorage(db_path, **kwargs)
        elif backend:
            kwargs.pop('db_path', None)
            return SQLStorage(backend, **kwargs)
        else:
            raise NotImplementedError(f'The backend `{backend}` is not supported yet!')
