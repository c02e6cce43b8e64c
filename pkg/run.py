#!/usr/bin/env python
"""
convspec 启动脚本
"""
import sys
from pathlib import Path

# 添加项目根目录到sys.path
root_dir = Path(__file__).resolve().parent
sys.path.append(str(root_dir))

from convspec.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
