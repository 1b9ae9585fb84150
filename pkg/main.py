#!/usr/bin/env python3
"""
d3 不變量實現搜尋 - 啟動文件
"""

import sys

from cli import main as cli_main
from utils.logger import setup_logger


def main():
    """主啟動函數"""
    setup_logger()
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
