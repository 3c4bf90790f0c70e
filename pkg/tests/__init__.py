"""
Pacote de testes do toolkit de esteganografia BMP/WAV.
"""
