"""命令行前端：spectrum、eigvec、weights、evolve、lift、verify"""
from .main import build_parser, main

__all__ = ['build_parser', 'main']
