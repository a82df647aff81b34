import sys
import logging.config
from logging import getLogger

# loads the env file named by DOTENV_PATH, logger_config reads it
import infodist

from logger_config import LOGGING_CONFIG
from initilialize import create_log_dir

create_log_dir()
logging.config.dictConfig(LOGGING_CONFIG)

from infodist import cli


logger = getLogger(__name__)


def run() -> int:

    parser = cli.setup_arg_parser()
    args = parser.parse_args()

    return cli.run_cli_job(args)


if __name__ == "__main__":

    try:
        status = run()
    except Exception as e:
        logger.error(f"Error in Main: {e}")
        raise e

    sys.exit(status)
