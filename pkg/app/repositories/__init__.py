"""Portas de acesso a arquivos de problema e relatórios."""
