import os
import re
import logging
import sys
from datetime import datetime, timedelta

from config.search_config import SearchConfig

# Log files start with the timestamp written by setup_logging
LOG_DATE_FORMAT = "%d%m%Y_%H%M"
LOG_DATE_REGEX = re.compile(r"^(\d{8}_\d{4})")


def setup_logging(log_filename, log_dir=None, level=None, to_file=None):
    """
    Configure the root logger once and return the logger for ``log_filename``.

    Records go to stderr and, unless disabled, to logs/<ddmmYYYY_HHMM>_<name>.log.
    Stdout is left alone so command output stays byte-identical between runs.
    """
    log_dir = log_dir or SearchConfig.LOG_DIR
    level = level or SearchConfig.LOG_LEVEL
    to_file = SearchConfig.LOG_TO_FILE if to_file is None else to_file

    root = logging.getLogger()
    if not root.handlers:
        handlers = [logging.StreamHandler(sys.stderr)]
        if to_file:
            current_date = datetime.now().strftime(LOG_DATE_FORMAT)
            log_path = os.path.join(log_dir, f'{current_date}_{log_filename}.log')
            try:
                os.makedirs(os.path.dirname(log_path), exist_ok=True)
                handlers.append(logging.FileHandler(log_path))
            except OSError as e:
                print(f"[WARNING] Cannot open log file {log_path}: {e}", file=sys.stderr)
        logging.basicConfig(level=getattr(logging, str(level).upper(), logging.INFO),
                            format='%(asctime)s - %(levelname)s - %(message)s',
                            handlers=handlers)
    return logging.getLogger(log_filename)


def delete_old_logs(days=None, log_dir=None):
    """Delete timestamped log files older than ``days``. Returns the number removed."""
    days = SearchConfig.LOG_RETENTION_DAYS if days is None else days
    log_dir = log_dir or SearchConfig.LOG_DIR
    if not os.path.exists(log_dir):
        return 0

    cutoff_time = datetime.now() - timedelta(days=days)
    removed = 0
    for filename in os.listdir(log_dir):
        match = LOG_DATE_REGEX.match(filename)
        if not match:
            continue
        try:
            file_time = datetime.strptime(match.group(1), LOG_DATE_FORMAT)
        except ValueError:
            logging.debug(f"Skipping {filename}: invalid date format")
            continue
        if file_time < cutoff_time:
            try:
                os.remove(os.path.join(log_dir, filename))
                removed += 1
            except OSError as e:
                logging.warning(f"Could not delete {filename}: {e}")
    return removed
