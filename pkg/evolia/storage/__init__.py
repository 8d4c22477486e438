from .factory import StorageFactory
