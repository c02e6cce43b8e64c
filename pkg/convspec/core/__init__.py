"""核心数值模块：扇区、哈密顿量、多项式、谱分解、演化与提升"""
