from typing import Iterable, List, Union

from jina.logging.logger import JinaLogger
from sqlalchemy import Column, DateTime, Integer, String, Text, create_engine, func
from sqlalchemy.orm import declarative_base, sessionmaker

from ..jobs import Report, emit, parse_report
from .base import ReportStorage

Base = declarative_base()


class ORMBase(Base):
    __abstract__ = True

    created = Column(DateTime, server_default=func.now())
    updated = Column(DateTime, server_default=func.now(), onupdate=func.now())


class ReportModel(ORMBase):
    __tablename__ = 'report'

    algebra_hash = Column(String(64), nullable=False, primary_key=True)
    ring = Column(String(200), nullable=False)
    version = Column(Integer, nullable=False)
    report_data = Column(Text, nullable=False)


class SQLStorage(ReportStorage):
    def __init__(self, db_url: str, **kwargs):
        """An SQL backed archive. Currently supports SQLite, PostgreSQL and MySQL backends."""
        self.engine = create_engine(db_url, **kwargs)
        ORMBase.metadata.create_all(self.engine)
        self.session = sessionmaker(bind=self.engine)()

        self.logger = JinaLogger(self.__class__.__name__)

    @staticmethod
    def _record(report: Report) -> ReportModel:
        return ReportModel(
            algebra_hash=report.algebra_hash,
            ring=str(report.ring),
            version=report.v,
            report_data=emit(report, 'machine'),
        )

    def _commit(self):
        try:
            self.session.commit()
        except Exception as ex:
            self.logger.error(f'Transaction rollback: {ex}')
            self.session.rollback()
            raise ex

    def get(self, keys: Union[str, List[str]]) -> List[Report]:
        if isinstance(keys, str):
            keys = [keys]
        return [
            parse_report(record.report_data)
            for record in self.session.query(ReportModel)
            .filter(ReportModel.algebra_hash.in_(keys))
            .all()
        ]

    def put(self, reports: Iterable[Report]):
        count = 0
        for report in reports:
            self.session.merge(self._record(report))
            count += 1
        self._commit()
        self.logger.info(f'Archive {count} reports')

    def update(self, reports: Iterable[Report]):
        reports = list(reports)
        for report in reports:
            if self.session.get(ReportModel, report.algebra_hash) is None:
                self.session.rollback()
                raise ValueError(
                    f'The report ({report.algebra_hash}) does not exist in the archive!'
                )
            self.session.merge(self._record(report))
        self._commit()
        self.logger.debug(f'Update {len(reports)} reports')

    def delete(self, keys: Union[str, List[str]]):
        if isinstance(keys, str):
            keys = [keys]
        self.session.query(ReportModel).filter(ReportModel.algebra_hash.in_(keys)).delete(
            synchronize_session=False
        )
        self._commit()
        self.logger.debug(f'Delete {len(keys)} reports')

    def keys(self) -> List[str]:
        return [
            key
            for (key,) in self.session.query(ReportModel.algebra_hash).order_by(
                ReportModel.algebra_hash
            )
        ]

    def batched_iterator(self, batch_size: int = 1):
        batch = []
        for record in (
            self.session.query(ReportModel).yield_per(batch_size).enable_eagerloads(False)
        ):
            batch.append(parse_report(record.report_data))
            if len(batch) == batch_size:
                yield batch
                batch = []
        if batch:
            yield batch

    def clear(self):
        self.session.query(ReportModel).delete(synchronize_session=False)
        self._commit()
        self.logger.info('Clear the report archive')

    @property
    def size(self):
        return self.session.query(func.count(ReportModel.algebra_hash)).scalar()

    @property
    def stat(self):
        return {'count': self.size}

    def close(self):
        self.session.close()
        self.engine.dispose()
