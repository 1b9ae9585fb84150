import os
import sys
from loguru import logger
from config import Config

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logger(level=None):
    """設置日誌配置

    控制台輸出走 stderr，標準輸出只留給計算結果，
    這樣 CLI 的 JSON/CSV 可以直接被其他程式讀取。
    """
    # 移除默認處理器
    logger.remove()

    # 添加控制台輸出
    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=(level or Config.LOG_LEVEL)
    )

    # 添加文件輸出
    if Config.LOG_TO_FILE:
        os.makedirs(Config.LOG_DIR, exist_ok=True)
        logger.add(
            f"{Config.LOG_DIR}/d3_realization.log",
            rotation="1 day",
            retention="7 days",
            format=FILE_FORMAT,
            level="DEBUG"
        )

    return logger


# 初始化日誌
setup_logger()
