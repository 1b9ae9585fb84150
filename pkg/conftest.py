#!/usr/bin/env python3
"""
pytest 共用設定

測試期間不寫日誌檔，需在 config 匯入前設定。
"""

import os

os.environ['D3_LOG_TO_FILE'] = '0'
