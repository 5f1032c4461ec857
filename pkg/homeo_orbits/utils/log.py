import json
import logging
import sys
import traceback
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from typing import Any

from homeo_orbits.utils.rational import format_rational

JOURNAL_SIZE = 1000

_journal: deque["RunLog"] = deque(maxlen=JOURNAL_SIZE)

_LEVELS = {"Error": logging.ERROR, "Invalid": logging.WARNING}


@dataclass
class RunLog:
	module: str
	status: str = "Queued"
	method: str | None = None
	message: str | None = None
	request_data: str | None = None
	response_data: str | None = None
	traceback: str | None = None
	created: datetime = field(default_factory=datetime.now)

	@property
	def title(self) -> str | None:
		title = self.message if self.message and self.message != "None" else None
		if not title and self.method:
			title = self.method.split(".")[-1]
		if title and len(title) >= 100:
			title = title[:100] + "..."
		return title


def json_default(obj: Any):
	if isinstance(obj, Fraction):
		return format_rational(obj)
	if hasattr(obj, "model_dump"):
		return obj.model_dump(mode="json")
	if hasattr(obj, "as_dict"):
		return obj.as_dict()
	if isinstance(obj, set | frozenset | tuple):
		return sorted(obj) if isinstance(obj, set | frozenset) else list(obj)
	return str(obj)


def dumps(data: Any) -> str:
	return json.dumps(data, sort_keys=True, indent=4, default=json_default)


def create_log(
	module_def=None,
	status="Queued",
	response_data=None,
	request_data=None,
	exception=None,
	method=None,
	message=None,
) -> RunLog:
	log = RunLog(module=str(module_def or "homeo_orbits"), status=status, method=method)

	if response_data is not None and not isinstance(response_data, str):
		response_data = dumps(response_data)

	if request_data is not None and not isinstance(request_data, str):
		request_data = dumps(request_data)

	log.message = message or _get_message(exception)
	log.response_data = response_data
	log.request_data = request_data
	if exception is not None and sys.exc_info()[0] is not None:
		log.traceback = traceback.format_exc()

	logger = logging.getLogger(f"homeo_orbits.{log.module}")
	logger.log(_LEVELS.get(status, logging.INFO), "%s: %s", log.status, log.title or "")
	if log.response_data:
		logger.debug(log.response_data)

	_journal.append(log)
	return log


def get_logs(module_def: str | None = None) -> list[RunLog]:
	return [log for log in _journal if module_def is None or log.module == module_def]


def clear_logs() -> None:
	_journal.clear()


def _get_message(exception) -> str | None:
	if exception is None:
		return None
	if getattr(exception, "message", None):
		return exception.message
	if hasattr(exception, "__str__"):
		return exception.__str__()
	return "Something went wrong during the computation"
